//
// Project     : tih2
// Module      : quadkernel
// Description : kernel evaluation and Galerkin quadrature
//

#include <algorithm>
#include <cmath>
#include <numbers>

#include <tih2/error.hh>
#include <tih2/quadkernel.hh>

namespace tih2 {

namespace {

constexpr double  inv_four_pi = 0.25 / std::numbers::pi;

}// namespace anonymous

double
laplace_single_layer ( const vec3 &  x,
                       const vec3 &  y )
{
    const double  r = norm2( x - y );

    if ( r == 0.0 )
        return 0.0;

    return inv_four_pi / r;
}

double
laplace_double_layer ( const vec3 &  x,
                       const vec3 &  y,
                       const vec3 &  normal_y )
{
    const vec3    z = x - y;
    const double  r = norm2( z );

    if ( r == 0.0 )
        return 0.0;

    return inv_four_pi * dot( z, normal_y ) / ( r * r * r );
}

void
gauss_legendre ( int                      n,
                 std::vector< double > &  points,
                 std::vector< double > &  weights )
{
    if ( n < 1 || n > 64 )
        throw error( errc::invalid_argument, "gauss_legendre: number of points out of range" );

    points.assign( n, 0.0 );
    weights.assign( n, 0.0 );

    for ( int i = 0; i < ( n + 1 ) / 2; ++i )
    {
        double  x  = std::cos( std::numbers::pi * ( i + 0.75 ) / ( n + 0.5 ) );
        double  dp = 0;

        for ( int it = 0; it < 100; ++it )
        {
            double  p0 = 1, p1 = x;

            for ( int k = 2; k <= n; ++k )
            {
                const double  p2 = ( ( 2 * k - 1 ) * x * p1 - ( k - 1 ) * p0 ) / k;

                p0 = p1;
                p1 = p2;
            }// for


            dp = n * ( x * p1 - p0 ) / ( x * x - 1 );

            const double  dx = p1 / dp;

            x -= dx;

            if ( std::abs( dx ) < 1e-16 )
                break;
        }// for

        // recompute derivative at the converged node
        {
            double  p0 = 1, p1 = x;

            for ( int k = 2; k <= n; ++k )
            {
                const double  p2 = ( ( 2 * k - 1 ) * x * p1 - ( k - 1 ) * p0 ) / k;

                p0 = p1;
                p1 = p2;
            }// for

            dp = n * ( x * p1 - p0 ) / ( x * x - 1 );
        }

        const double  w = 2.0 / ( ( 1 - x * x ) * dp * dp );

        // map from [-1,1] to [0,1], ascending order
        points[ i ]          = 0.5 * ( 1 - x );
        points[ n - 1 - i ]  = 0.5 * ( 1 + x );
        weights[ i ]         = 0.5 * w;
        weights[ n - 1 - i ] = 0.5 * w;
    }// for

    if ( n % 2 == 1 )
        points[ n / 2 ] = 0.5;
}

namespace {

void
add_orbit ( triangle_rule &  rule,
            double           a,
            double           w )
{
    const double  b = 1 - 2 * a;

    rule.points.push_back( { b, a, a } );
    rule.points.push_back( { a, b, a } );
    rule.points.push_back( { a, a, b } );
    rule.weights.insert( rule.weights.end(), 3, w );
}

}// namespace anonymous

triangle_rule
make_triangle_rule ( int  degree )
{
    if ( degree < 1 || degree > 40 )
        throw error( errc::invalid_argument, "make_triangle_rule: degree out of range" );

    triangle_rule  rule;

    rule.degree = degree;

    switch ( degree )
    {
        case 1 :
            rule.points.push_back( { 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0 } );
            rule.weights.push_back( 1.0 );
            break;

        case 2 :
            add_orbit( rule, 1.0 / 6.0, 1.0 / 3.0 );
            break;

        case 3 :
        case 4 :
            add_orbit( rule, 0.445948490915965, 0.223381589678011 );
            add_orbit( rule, 0.091576213509771, 0.109951743655322 );
            break;

        case 5 :
            rule.points.push_back( { 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0 } );
            rule.weights.push_back( 0.225 );
            add_orbit( rule, 0.470142064105115, 0.132394152788506 );
            add_orbit( rule, 0.101286507323456, 0.125939180544827 );
            break;

        default :
        {
            // collapsed tensor Gauss rule
            const int              m = ( degree + 3 ) / 2;
            std::vector< double >  gx, gw;

            gauss_legendre( m, gx, gw );

            for ( int i = 0; i < m; ++i )
                for ( int j = 0; j < m; ++j )
                {
                    const double  u = gx[i];
                    const double  v = gx[j] * ( 1 - u );

                    rule.points.push_back( { 1 - u - v, u, v } );
                    rule.weights.push_back( 2 * gw[i] * gw[j] * ( 1 - u ) );
                }// for
        }
    }// switch

    return rule;
}

singular_rule
make_singular_rule ( int  order )
{
    if ( order < 1 || order > 32 )
        throw error( errc::invalid_argument, "make_singular_rule: order out of range" );

    std::vector< double >  g, w;

    gauss_legendre( order, g, w );

    singular_rule  rule;

    for ( int a = 0; a < order; ++a )
        for ( int b = 0; b < order; ++b )
            for ( int c = 0; c < order; ++c )
                for ( int e = 0; e < order; ++e )
                {
                    const double  xi = g[a], e1 = g[b], e2 = g[c], e3 = g[e];
                    const double  wt = w[a] * w[b] * w[c] * w[e];

                    //
                    // identical triangles
                    //
                    {
                        const double  jw = wt * xi * xi * xi * e1 * e1 * e2;
                        auto &        s  = rule.identical;

                        s.push_back( { xi, xi * ( 1 - e1 + e1 * e2 ), xi * ( 1 - e1 * e2 * e3 ), xi * ( 1 - e1 ), jw } );
                        s.push_back( { xi * ( 1 - e1 * e2 * e3 ), xi * ( 1 - e1 ), xi, xi * ( 1 - e1 + e1 * e2 ), jw } );
                        s.push_back( { xi, xi * e1 * ( 1 - e2 + e2 * e3 ), xi * ( 1 - e1 * e2 ), xi * e1 * ( 1 - e2 ), jw } );
                        s.push_back( { xi * ( 1 - e1 * e2 ), xi * e1 * ( 1 - e2 ), xi, xi * e1 * ( 1 - e2 + e2 * e3 ), jw } );
                        s.push_back( { xi * ( 1 - e1 * e2 * e3 ), xi * e1 * ( 1 - e2 * e3 ), xi, xi * e1 * ( 1 - e2 ), jw } );
                        s.push_back( { xi, xi * e1 * ( 1 - e2 ), xi * ( 1 - e1 * e2 * e3 ), xi * e1 * ( 1 - e2 * e3 ), jw } );
                    }

                    //
                    // common edge x2 = y2 = 0
                    //
                    {
                        const double  j1 = wt * xi * xi * xi * e1 * e1;
                        const double  j2 = j1 * e2;
                        auto &        s  = rule.common_edge;

                        s.push_back( { xi, xi * e1 * e3, xi * ( 1 - e1 * e2 ), xi * e1 * ( 1 - e2 ), j1 } );
                        s.push_back( { xi, xi * e1, xi * ( 1 - e1 * e2 * e3 ), xi * e1 * e2 * ( 1 - e3 ), j2 } );
                        s.push_back( { xi * ( 1 - e1 * e2 ), xi * e1 * ( 1 - e2 ), xi, xi * e1 * e2 * e3, j2 } );
                        s.push_back( { xi * ( 1 - e1 * e2 * e3 ), xi * e1 * e2 * ( 1 - e3 ), xi, xi * e1, j2 } );
                        s.push_back( { xi * ( 1 - e1 * e2 * e3 ), xi * e1 * ( 1 - e2 * e3 ), xi, xi * e1 * e2, j2 } );
                    }

                    //
                    // common vertex at the origin
                    //
                    {
                        const double  jw = wt * xi * xi * xi * e2;
                        auto &        s  = rule.common_vertex;

                        s.push_back( { xi, xi * e1, xi * e2, xi * e2 * e3, jw } );
                        s.push_back( { xi * e2, xi * e2 * e3, xi, xi * e1, jw } );
                    }
                }// for

    return rule;
}

galerkin_quadrature::galerkin_quadrature ( const surface_mesh &        mesh,
                                           const quadrature_options &  opts )
        : _mesh( & mesh )
        , _regular( make_triangle_rule( opts.regular_order ) )
        , _singular( make_singular_rule( opts.singular_order ) )
{}

Eigen::Matrix3d
galerkin_quadrature::pair ( kernel_kind  k,
                            index_t      ta,
                            index_t      tb ) const
{
    // symmetric kernel: evaluate one orientation only so that G = G^T exactly
    if ( k == kernel_kind::single_layer && ta > tb )
        return pair( k, tb, ta ).transpose();

    const auto &     tri_a  = _mesh->triangles()[ ta ];
    const auto &     tri_b  = _mesh->triangles()[ tb ];
    const vec3 &     n_b    = _mesh->normals()[ tb ];
    Eigen::Matrix3d  result = Eigen::Matrix3d::Zero();

    // local corner orders with shared vertices first
    std::array< int, 3 >  pa{ 0, 1, 2 }, pb{ 0, 1, 2 };
    int                   shared = 0;

    for ( int i = 0; i < 3; ++i )
        for ( int j = 0; j < 3; ++j )
            if ( tri_a[i] == tri_b[j] )
            {
                pa[shared] = i;
                pb[shared] = j;
                ++shared;
            }// if

    if ( shared == 0 )
    {
        const auto &  rule = _regular;
        const double  aa   = _mesh->areas()[ ta ];
        const double  ab   = _mesh->areas()[ tb ];
        const vec3    A0 = _mesh->corner( ta, 0 ), A1 = _mesh->corner( ta, 1 ), A2 = _mesh->corner( ta, 2 );
        const vec3    B0 = _mesh->corner( tb, 0 ), B1 = _mesh->corner( tb, 1 ), B2 = _mesh->corner( tb, 2 );

        for ( std::size_t q = 0; q < rule.size(); ++q )
        {
            const vec3 &  la = rule.points[q];
            const vec3    x  = la[0] * A0 + la[1] * A1 + la[2] * A2;

            for ( std::size_t r = 0; r < rule.size(); ++r )
            {
                const vec3 &  lb = rule.points[r];
                const vec3    y  = lb[0] * B0 + lb[1] * B1 + lb[2] * B2;
                const double  f  = aa * ab * rule.weights[q] * rule.weights[r] * evaluate_kernel( k, x, y, n_b );

                for ( int a = 0; a < 3; ++a )
                    for ( int b = 0; b < 3; ++b )
                        result( a, b ) += f * la[a] * lb[b];
            }// for
        }// for

        return result;
    }// if

    // complete the orders with the remaining corners
    auto  complete = [shared] ( std::array< int, 3 > &  p )
    {
        std::array< bool, 3 >  used{ false, false, false };

        for ( int i = 0; i < shared; ++i )
            used[ p[i] ] = true;

        int  pos = shared;

        for ( int i = 0; i < 3; ++i )
            if ( ! used[i] )
                p[pos++] = i;
    };

    complete( pa );
    complete( pb );

    const std::vector< singular_rule::sample > *  samples = nullptr;

    switch ( shared )
    {
        case 1  : samples = & _singular.common_vertex; break;
        case 2  : samples = & _singular.common_edge; break;
        default : samples = & _singular.identical; break;
    }// switch

    const vec3    A0 = _mesh->corner( ta, pa[0] ), A1 = _mesh->corner( ta, pa[1] ), A2 = _mesh->corner( ta, pa[2] );
    const vec3    B0 = _mesh->corner( tb, pb[0] ), B1 = _mesh->corner( tb, pb[1] ), B2 = _mesh->corner( tb, pb[2] );
    const double  jac = 4 * _mesh->areas()[ ta ] * _mesh->areas()[ tb ];

    Eigen::Matrix3d  local = Eigen::Matrix3d::Zero();

    for ( const auto & s : *samples )
    {
        const std::array< double, 3 >  la{ 1 - s.x1, s.x1 - s.x2, s.x2 };
        const std::array< double, 3 >  lb{ 1 - s.y1, s.y1 - s.y2, s.y2 };
        const vec3    x = la[0] * A0 + la[1] * A1 + la[2] * A2;
        const vec3    y = lb[0] * B0 + lb[1] * B1 + lb[2] * B2;
        const double  f = jac * s.w * evaluate_kernel( k, x, y, n_b );

        for ( int a = 0; a < 3; ++a )
            for ( int b = 0; b < 3; ++b )
                local( a, b ) += f * la[a] * lb[b];
    }// for

    for ( int a = 0; a < 3; ++a )
        for ( int b = 0; b < 3; ++b )
            result( pa[a], pb[b] ) = local( a, b );

    if ( k == kernel_kind::single_layer && ta == tb )
        result = 0.5 * ( result + result.transpose() ).eval();

    return result;
}

double
entry ( kernel_kind                  k,
        const basis_family &         rows,
        index_t                      i,
        const basis_family &         cols,
        index_t                      j,
        const galerkin_quadrature &  quad )
{
    double  sum = 0;

    for ( auto  ta : rows.support( i ) )
    {
        const auto             wa = rows.local_weights( i, ta );
        const Eigen::Vector3d  va( wa[0], wa[1], wa[2] );

        for ( auto  tb : cols.support( j ) )
        {
            const auto             wb = cols.local_weights( j, tb );
            const Eigen::Vector3d  vb( wb[0], wb[1], wb[2] );

            sum += va.dot( quad.pair( k, ta, tb ) * vb );
        }// for
    }// for

    return sum;
}

namespace {

struct triangle_use
{
    index_t          tri;
    index_t          local;
    Eigen::Vector3d  weights;
};

// (triangle, local index, weights) sorted by triangle
std::vector< triangle_use >
collect_uses ( const basis_family &        basis,
               std::span< const index_t >  indices )
{
    std::vector< triangle_use >  uses;

    for ( std::size_t  l = 0; l < indices.size(); ++l )
    {
        for ( auto  t : basis.support( indices[l] ) )
        {
            const auto  w = basis.local_weights( indices[l], t );

            uses.push_back( { t, index_t( l ), Eigen::Vector3d( w[0], w[1], w[2] ) } );
        }// for
    }// for

    std::stable_sort( uses.begin(), uses.end(),
                      [] ( const auto & a, const auto & b ) { return a.tri < b.tri; } );

    return uses;
}

}// namespace anonymous

row_major_matrix
assemble_block ( kernel_kind                   k,
                 const basis_family &          rows,
                 std::span< const index_t >    row_indices,
                 const basis_family &          cols,
                 std::span< const index_t >    col_indices,
                 const galerkin_quadrature &   quad )
{
    row_major_matrix  block = row_major_matrix::Zero( row_indices.size(), col_indices.size() );

    const auto  ru = collect_uses( rows, row_indices );
    const auto  cu = collect_uses( cols, col_indices );

    for ( std::size_t  ra = 0; ra < ru.size(); )
    {
        std::size_t  re = ra;

        while ( re < ru.size() && ru[re].tri == ru[ra].tri )
            ++re;

        for ( std::size_t  ca = 0; ca < cu.size(); )
        {
            std::size_t  ce = ca;

            while ( ce < cu.size() && cu[ce].tri == cu[ca].tri )
                ++ce;

            const Eigen::Matrix3d  p = quad.pair( k, ru[ra].tri, cu[ca].tri );

            for ( std::size_t  r = ra; r < re; ++r )
            {
                const Eigen::RowVector3d  wp = ru[r].weights.transpose() * p;

                for ( std::size_t  c = ca; c < ce; ++c )
                    block( ru[r].local, cu[c].local ) += wp.dot( cu[c].weights );
            }// for

            ca = ce;
        }// for

        ra = re;
    }// for

    return block;
}

dense_matrix
dense_assemble ( kernel_kind                  k,
                 const basis_family &         rows,
                 const basis_family &         cols,
                 const galerkin_quadrature &  quad )
{
    if ( rows.size() * cols.size() > dense_entry_limit )
        throw error( errc::size_limit, "dense_assemble: " + std::to_string( rows.size() ) + " x " +
                     std::to_string( cols.size() ) + " exceeds the dense size limit" );

    std::vector< index_t >  ri( rows.size() ), ci( cols.size() );

    for ( std::size_t  i = 0; i < ri.size(); ++i ) ri[i] = index_t( i );
    for ( std::size_t  j = 0; j < ci.size(); ++j ) ci[j] = index_t( j );

    return assemble_block( k, rows, ri, cols, ci, quad );
}

double
mass_entry ( const basis_family &  rows,
             index_t               i,
             const basis_family &  cols,
             index_t               j )
{
    double  sum = 0;

    for ( auto  ta : rows.support( i ) )
    {
        for ( auto  tb : cols.support( j ) )
        {
            if ( ta != tb )
                continue;

            // int lambda_a lambda_b = area (1 + delta_ab) / 12
            const auto    wa   = rows.local_weights( i, ta );
            const auto    wb   = cols.local_weights( j, ta );
            const double  area = rows.mesh().areas()[ ta ];
            double        s    = 0;

            for ( int a = 0; a < 3; ++a )
                for ( int b = 0; b < 3; ++b )
                    s += wa[a] * wb[b] * ( a == b ? 2.0 : 1.0 );

            sum += area * s / 12.0;
        }// for
    }// for

    return sum;
}

std::vector< sparse_entry >
assemble_mass ( const basis_family &  rows,
                const basis_family &  cols )
{
    const auto &  mesh = rows.mesh();

    if ( mesh.triangle_count() != cols.mesh().triangle_count() )
        throw error( errc::dimension_mismatch, "assemble_mass: bases live on different meshes" );

    // basis functions touching each triangle
    std::vector< std::vector< index_t > >  row_on( mesh.triangle_count() ), col_on( mesh.triangle_count() );

    for ( std::size_t  i = 0; i < rows.size(); ++i )
        for ( auto  t : rows.support( index_t( i ) ) )
            row_on[t].push_back( index_t( i ) );

    for ( std::size_t  j = 0; j < cols.size(); ++j )
        for ( auto  t : cols.support( index_t( j ) ) )
            col_on[t].push_back( index_t( j ) );

    std::vector< sparse_entry >  entries;

    for ( std::size_t  t = 0; t < mesh.triangle_count(); ++t )
    {
        const double  area = mesh.areas()[t];

        for ( auto  i : row_on[t] )
        {
            const auto  wa = rows.local_weights( i, index_t( t ) );

            for ( auto  j : col_on[t] )
            {
                const auto  wb = cols.local_weights( j, index_t( t ) );
                double      s  = 0;

                for ( int a = 0; a < 3; ++a )
                    for ( int b = 0; b < 3; ++b )
                        s += wa[a] * wb[b] * ( a == b ? 2.0 : 1.0 );

                entries.push_back( { i, j, area * s / 12.0 } );
            }// for
        }// for
    }// for

    // merge duplicates
    std::sort( entries.begin(), entries.end(),
               [] ( const auto & a, const auto & b ) { return a.row != b.row ? a.row < b.row : a.col < b.col; } );

    std::vector< sparse_entry >  merged;

    for ( const auto & e : entries )
    {
        if ( ! merged.empty() && merged.back().row == e.row && merged.back().col == e.col )
            merged.back().value += e.value;
        else
            merged.push_back( e );
    }// for

    return merged;
}

void
sparse_matvec ( std::span< const sparse_entry >  a,
                std::span< const double >        x,
                std::span< double >              y,
                double                           alpha )
{
    for ( const auto & e : a )
        y[ e.row ] += alpha * e.value * x[ e.col ];
}

void
moment ( const basis_family &   basis,
         index_t                i,
         const tensor_grid &    grid,
         moment_variant         variant,
         const triangle_rule &  rule,
         std::span< double >    out,
         const vec3 &           offset )
{
    if ( out.size() != grid.size() )
        throw error( errc::dimension_mismatch, "moment: output size differs from grid size" );

    std::fill( out.begin(), out.end(), 0.0 );

    const auto &           mesh = basis.mesh();
    std::vector< double >  vals( grid.size() );

    for ( auto  t : basis.support( i ) )
    {
        const auto    w    = basis.local_weights( i, t );
        const double  area = mesh.areas()[t];
        const vec3    P0 = mesh.corner( t, 0 ), P1 = mesh.corner( t, 1 ), P2 = mesh.corner( t, 2 );

        for ( std::size_t  q = 0; q < rule.size(); ++q )
        {
            const vec3 &  l   = rule.points[q];
            const double  phi = w[0] * l[0] + w[1] * l[1] + w[2] * l[2];

            if ( phi == 0.0 )
                continue;

            const vec3    x = l[0] * P0 + l[1] * P1 + l[2] * P2 - offset;

            if ( variant == moment_variant::value )
                grid.lagrange_all( x, vals );
            else
                grid.derivative_all( x, mesh.normals()[t], vals );

            const double  f = area * rule.weights[q] * phi;

            for ( std::size_t  nu = 0; nu < vals.size(); ++nu )
                out[nu] += f * vals[nu];
        }// for
    }// for
}

dense_matrix
moments ( const basis_family &          basis,
          std::span< const index_t >    indices,
          const tensor_grid &           grid,
          moment_variant                variant,
          const triangle_rule &         rule,
          const vec3 &                  offset )
{
    dense_matrix           m( indices.size(), grid.size() );
    std::vector< double >  row( grid.size() );

    for ( std::size_t  l = 0; l < indices.size(); ++l )
    {
        moment( basis, indices[l], grid, variant, rule, row, offset );

        for ( std::size_t  nu = 0; nu < row.size(); ++nu )
            m( l, nu ) = row[nu];
    }// for

    return m;
}

}// namespace tih2
