#ifndef TIH2_SOLVER_HH
#define TIH2_SOLVER_HH
//
// Project     : tih2
// Module      : solver
// Description : conjugate gradients, Dirichlet data and Neumann errors
//

#include <functional>
#include <span>
#include <vector>

#include <tih2/error.hh>
#include <tih2/mesh.hh>

namespace tih2 {

// y = A x
using linear_operator = std::function< void ( std::span< const double >, std::span< double > ) >;

struct cg_result
{
    std::vector< double >  x;
    int                    iterations = 0;
    // relative residual norms of the recursion, starting with 1
    std::vector< double >  residuals;
};

// thrown after max_iter steps without reaching the tolerance
class convergence_error : public error
{
public:
    convergence_error ( const std::string & what, std::vector< double > history )
            : error( errc::not_converged, what )
            , _history( std::move( history ) )
    {}

    const std::vector< double > &  history () const { return _history; }

private:
    std::vector< double >  _history;
};

// unpreconditioned CG from a zero initial guess
cg_result  cg_solve ( const linear_operator &    apply,
                      std::span< const double >  rhs,
                      double                     rel_tol,
                      int                        max_iter );

//
// u0 = 1/|x - y0| (= 4 pi g(x, y0)) with exact Neumann trace
//
struct dirichlet_problem
{
    vec3  source{ 1.2, 1.2, 1.2 };

    double  value   ( const vec3 & x ) const;
    vec3    gradient ( const vec3 & x ) const;
    double  neumann ( const vec3 & x, const vec3 & normal ) const { return dot( gradient( x ), normal ); }
};

using scalar_field = std::function< double ( const vec3 & ) >;

//
// coefficients of u in a piecewise linear family: nodal interpolation, or
// the L2-orthogonal projection (Gram system solved by CG)
//
std::vector< double >  project_dirichlet ( const basis_family &  linear,
                                           const scalar_field &  u,
                                           bool                  gram = false,
                                           int                   rule_degree = 5 );

// per-triangle mean values of the exact Neumann trace (best constant approximation)
std::vector< double >  neumann_projection ( const basis_family &       constants,
                                            const dirichlet_problem &  problem,
                                            int                        rule_degree = 5 );

// ||du0/dn - sum x_i phi_i|| / ||du0/dn|| in L2 over the mesh, flat triangle normals
double  neumann_l2_error ( const basis_family &       constants,
                           std::span< const double >  x,
                           const dirichlet_problem &  problem,
                           int                        rule_degree = 5 );

}// namespace tih2

#endif // TIH2_SOLVER_HH
