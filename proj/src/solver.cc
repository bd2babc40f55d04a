//
// Project     : tih2
// Module      : solver
// Description : conjugate gradients, Dirichlet data and Neumann errors
//

#include <cmath>

#include <tih2/quadkernel.hh>
#include <tih2/solver.hh>

namespace tih2 {

namespace {

double
dot_product ( std::span< const double > a, std::span< const double > b )
{
    double  s = 0;

    for ( std::size_t  i = 0; i < a.size(); ++i )
        s += a[i] * b[i];

    return s;
}

}// namespace anonymous

cg_result
cg_solve ( const linear_operator &    apply,
           std::span< const double >  rhs,
           double                     rel_tol,
           int                        max_iter )
{
    if ( ! ( rel_tol > 0 ) || max_iter < 1 )
        throw error( errc::invalid_argument, "cg_solve: tolerance and iteration limit must be positive" );

    const std::size_t  n = rhs.size();
    cg_result          res;

    res.x.assign( n, 0.0 );
    res.residuals.push_back( 1.0 );

    const double  bnorm = std::sqrt( dot_product( rhs, rhs ) );

    if ( bnorm == 0 )
        return res;

    std::vector< double >  r( rhs.begin(), rhs.end() ), p( r ), q( n );
    double                 rr = bnorm * bnorm;

    for ( int  it = 1; it <= max_iter; ++it )
    {
        apply( p, q );

        const double  pq = dot_product( p, q );

        if ( ! ( pq > 0 ) )
            throw convergence_error( "cg_solve: operator is not positive definite", res.residuals );

        const double  alpha = rr / pq;

        for ( std::size_t  i = 0; i < n; ++i )
        {
            res.x[i] += alpha * p[i];
            r[i]     -= alpha * q[i];
        }// for

        const double  rr_new = dot_product( r, r );

        res.iterations = it;
        res.residuals.push_back( std::sqrt( rr_new ) / bnorm );

        if ( res.residuals.back() <= rel_tol )
            return res;

        const double  beta = rr_new / rr;

        for ( std::size_t  i = 0; i < n; ++i )
            p[i] = r[i] + beta * p[i];

        rr = rr_new;
    }// for

    throw convergence_error( "cg_solve: no convergence after " + std::to_string( max_iter ) +
                             " iterations, relative residual " + std::to_string( res.residuals.back() ),
                             res.residuals );
}

double
dirichlet_problem::value ( const vec3 & x ) const
{
    return 1.0 / norm2( x - source );
}

vec3
dirichlet_problem::gradient ( const vec3 & x ) const
{
    const vec3    z = x - source;
    const double  r = norm2( z );

    return ( -1.0 / ( r * r * r ) ) * z;
}

std::vector< double >
project_dirichlet ( const basis_family &  linear,
                    const scalar_field &  u,
                    bool                  gram,
                    int                   rule_degree )
{
    if ( linear.kind() != basis_kind::piecewise_linear )
        throw error( errc::invalid_argument, "project_dirichlet: requires a piecewise linear family" );

    std::vector< double >  c( linear.size() );

    for ( index_t  j = 0; j < linear.size(); ++j )
        c[j] = u( linear.characteristic_point( j ) );

    if ( ! gram )
        return c;

    // b_j = int psi_j u
    const auto &           mesh = linear.mesh();
    const auto             rule = make_triangle_rule( rule_degree );
    std::vector< double >  b( linear.size(), 0.0 );

    for ( index_t  t = 0; t < mesh.triangle_count(); ++t )
    {
        for ( std::size_t  q = 0; q < rule.size(); ++q )
        {
            const auto &  l = rule.points[q];
            const vec3    x = l[0] * mesh.corner( t, 0 ) + l[1] * mesh.corner( t, 1 ) + l[2] * mesh.corner( t, 2 );
            const double  f = mesh.areas()[t] * rule.weights[q] * u( x );

            for ( int  a = 0; a < 3; ++a )
                b[ mesh.triangles()[t][a] ] += f * l[a];
        }// for
    }// for

    const auto  mass = assemble_mass( linear, linear );
    auto        op   = [&] ( std::span< const double > x, std::span< double > y )
    {
        std::fill( y.begin(), y.end(), 0.0 );
        sparse_matvec( mass, x, y );
    };

    return cg_solve( op, b, 1e-13, 10 * int( linear.size() ) + 100 ).x;
}

std::vector< double >
neumann_projection ( const basis_family &       constants,
                     const dirichlet_problem &  problem,
                     int                        rule_degree )
{
    const auto &           mesh = constants.mesh();
    const auto             rule = make_triangle_rule( rule_degree );
    std::vector< double >  x( constants.size(), 0.0 );

    for ( index_t  t = 0; t < constants.size(); ++t )
    {
        for ( std::size_t  q = 0; q < rule.size(); ++q )
        {
            const auto &  l = rule.points[q];
            const vec3    p = l[0] * mesh.corner( t, 0 ) + l[1] * mesh.corner( t, 1 ) + l[2] * mesh.corner( t, 2 );

            x[t] += rule.weights[q] * problem.neumann( p, mesh.normals()[t] );
        }// for
    }// for

    return x;
}

double
neumann_l2_error ( const basis_family &       constants,
                   std::span< const double >  x,
                   const dirichlet_problem &  problem,
                   int                        rule_degree )
{
    if ( constants.kind() != basis_kind::piecewise_constant )
        throw error( errc::invalid_argument, "neumann_l2_error: requires a piecewise constant family" );

    if ( x.size() != constants.size() )
        throw error( errc::dimension_mismatch, "neumann_l2_error: coefficient vector has wrong size" );

    if ( rule_degree < 4 )
        throw error( errc::invalid_argument, "neumann_l2_error: rule degree must be at least 4" );

    const auto &  mesh = constants.mesh();
    const auto    rule = make_triangle_rule( rule_degree );
    double        err  = 0, ref = 0;

    for ( index_t  t = 0; t < constants.size(); ++t )
    {
        for ( std::size_t  q = 0; q < rule.size(); ++q )
        {
            const auto &  l = rule.points[q];
            const vec3    p = l[0] * mesh.corner( t, 0 ) + l[1] * mesh.corner( t, 1 ) + l[2] * mesh.corner( t, 2 );
            const double  g = problem.neumann( p, mesh.normals()[t] );
            const double  w = mesh.areas()[t] * rule.weights[q];

            err += w * ( g - x[t] ) * ( g - x[t] );
            ref += w * g * g;
        }// for
    }// for

    return std::sqrt( err / ref );
}

}// namespace tih2
