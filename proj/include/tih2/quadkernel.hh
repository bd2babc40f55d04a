#ifndef TIH2_QUADKERNEL_HH
#define TIH2_QUADKERNEL_HH
//
// Project     : tih2
// Module      : quadkernel
// Description : Laplace kernels, triangle quadrature (regular and
//               Sauter-Schwab singular) and Galerkin entry assembly
//

#include <span>
#include <vector>

#include <Eigen/Dense>

#include <tih2/interpolation.hh>
#include <tih2/mesh.hh>

namespace tih2 {

using dense_matrix = Eigen::MatrixXd;

enum class kernel_kind
{
    single_layer,   // 1 / (4 pi |x-y|)
    double_layer    // <x-y, n(y)> / (4 pi |x-y|^3)
};

// zero for x == y
double  laplace_single_layer ( const vec3 & x, const vec3 & y );
double  laplace_double_layer ( const vec3 & x, const vec3 & y, const vec3 & normal_y );

inline double
evaluate_kernel ( kernel_kind k, const vec3 & x, const vec3 & y, const vec3 & normal_y )
{
    return k == kernel_kind::single_layer ? laplace_single_layer( x, y )
                                          : laplace_double_layer( x, y, normal_y );
}

//
// Gauss-Legendre rule on [0,1]
//
void  gauss_legendre ( int n, std::vector< double > & points, std::vector< double > & weights );

//
// rule on a triangle: barycentric points, weights summing to one
// (multiply by the area)
//
struct triangle_rule
{
    int                    degree = 0;
    std::vector< vec3 >    points;
    std::vector< double >  weights;

    std::size_t  size () const { return weights.size(); }
};

// positive rule integrating polynomials of total degree <= degree exactly
triangle_rule  make_triangle_rule ( int degree );

//
// Sauter-Schwab rules on the reference triangle {0 <= x2 <= x1 <= 1} for
// pairs of triangles sharing all vertices, an edge or a vertex; points are
// (x1, x2, y1, y2) with weights for the integral over the reference pair
//
struct singular_rule
{
    struct sample { double  x1, x2, y1, y2, w; };

    std::vector< sample >  identical;
    std::vector< sample >  common_edge;
    std::vector< sample >  common_vertex;
};

singular_rule  make_singular_rule ( int order );

struct quadrature_options
{
    int  regular_order  = 2;
    int  singular_order = 4;
};

//
// double integrals over pairs of triangles of a mesh
//
class galerkin_quadrature
{
public:
    galerkin_quadrature ( const surface_mesh &        mesh,
                          const quadrature_options &  opts = {} );

    const surface_mesh &   mesh     () const { return *_mesh; }
    const triangle_rule &  regular  () const { return _regular; }
    const singular_rule &  singular () const { return _singular; }

    //
    // P(a,b) = int_Ta int_Tb lambda_a(x) k(x,y) lambda_b(y) dy dx for the
    // corner barycentric coordinates of both triangles (stored order)
    //
    Eigen::Matrix3d  pair ( kernel_kind k, index_t ta, index_t tb ) const;

private:
    const surface_mesh *  _mesh;
    triangle_rule         _regular;
    singular_rule         _singular;
};

// single Galerkin entry int phi_i(x) int k(x,y) psi_j(y)
double  entry ( kernel_kind                  k,
                const basis_family &         rows, index_t i,
                const basis_family &         cols, index_t j,
                const galerkin_quadrature &  quad );

// dense block for the given index lists (row-major, |rows| x |cols|)
using row_major_matrix = Eigen::Matrix< double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor >;

row_major_matrix  assemble_block ( kernel_kind                   k,
                                   const basis_family &          rows,
                                   std::span< const index_t >    row_indices,
                                   const basis_family &          cols,
                                   std::span< const index_t >    col_indices,
                                   const galerkin_quadrature &   quad );

// largest number of entries dense_assemble accepts (2048^2)
inline constexpr std::size_t  dense_entry_limit = std::size_t( 1 ) << 22;

dense_matrix  dense_assemble ( kernel_kind                  k,
                               const basis_family &         rows,
                               const basis_family &         cols,
                               const galerkin_quadrature &  quad );

//
// mass matrix int phi_i psi_j, exact for piecewise constant/linear families
//
struct sparse_entry
{
    index_t  row;
    index_t  col;
    double   value;
};

double                       mass_entry    ( const basis_family & rows, index_t i, const basis_family & cols, index_t j );
std::vector< sparse_entry >  assemble_mass ( const basis_family & rows, const basis_family & cols );

void  sparse_matvec ( std::span< const sparse_entry > a, std::span< const double > x, std::span< double > y, double alpha = 1 );

enum class moment_variant
{
    value,              // int phi_i L_nu
    normal_derivative   // int phi_i d/dn L_nu
};

//
// moment vector of basis function i against the Lagrange polynomials of a
// grid translated by offset, i.e. L_nu(x - offset); out.size() == grid.size()
//
void  moment ( const basis_family &   basis,
               index_t                i,
               const tensor_grid &    grid,
               moment_variant         variant,
               const triangle_rule &  rule,
               std::span< double >    out,
               const vec3 &           offset = { 0, 0, 0 } );

// moment matrix for a list of indices, |indices| x grid.size()
dense_matrix  moments ( const basis_family &          basis,
                        std::span< const index_t >    indices,
                        const tensor_grid &           grid,
                        moment_variant                variant,
                        const triangle_rule &         rule,
                        const vec3 &                  offset = { 0, 0, 0 } );

}// namespace tih2

#endif // TIH2_QUADKERNEL_HH
