//
// Project     : tih2
// Module      : interpolation
// Description : tensor Chebyshev interpolation on axis-parallel boxes
//

#include <numbers>

#include <tih2/error.hh>
#include <tih2/interpolation.hh>

namespace tih2 {

std::vector< double >
chebyshev_nodes ( int degree, double a, double b )
{
    if ( degree < 0 )
        throw error( errc::invalid_argument, "negative interpolation degree" );

    if ( a > b )
        throw error( errc::invalid_argument, "chebyshev_nodes: interval with a > b" );

    std::vector< double >  x( degree + 1 );
    const double           mid  = 0.5 * ( a + b );
    const double           half = 0.5 * ( b - a );

    for ( int  v = 0; v <= degree; ++v )
    {
        // cos(pi/2) is not exactly zero in floating point
        const int     num = 2 * v + 1;
        const double  c   = ( 2 * num == 2 * degree + 2 ) ? 0.0 : std::cos( std::numbers::pi * num / ( 2.0 * degree + 2.0 ) );

        x[v] = mid + half * c;
    }// for

    return x;
}

tensor_grid::tensor_grid ( int degree, const axis_box & box )
        : _degree( degree )
        , _box( box )
{
    for ( int  i = 0; i < dim; ++i )
        _nodes[i] = chebyshev_nodes( degree, box.lower[i], box.upper[i] );

    _weights.resize( degree + 1 );

    for ( int  v = 0; v <= degree; ++v )
    {
        const double  s = std::sin( std::numbers::pi * ( 2 * v + 1 ) / ( 2.0 * degree + 2.0 ) );

        _weights[v] = ( v % 2 == 0 ) ? s : -s;
    }// for
}

std::array< int, 3 >
tensor_grid::multi_index ( std::size_t nu ) const
{
    const std::size_t  m = _degree + 1;

    return { int( nu % m ), int( ( nu / m ) % m ), int( nu / ( m * m ) ) };
}

vec3
tensor_grid::point ( std::size_t nu ) const
{
    const auto  mi = multi_index( nu );

    return { _nodes[0][mi[0]], _nodes[1][mi[1]], _nodes[2][mi[2]] };
}

void
tensor_grid::axis_values ( int axis, double x, double * val, double * der ) const
{
    const auto &  nodes = _nodes[axis];
    const int     m     = _degree + 1;

    if ( m == 1 )
    {
        val[0] = 1.0;

        if ( der != nullptr )
            der[0] = 0.0;

        return;
    }// if

    for ( int  j = 0; j < m; ++j )
    {
        if ( x == nodes[j] )
        {
            for ( int  i = 0; i < m; ++i )
                val[i] = ( i == j ) ? 1.0 : 0.0;

            if ( der != nullptr )
            {
                // row j of the differentiation matrix
                double  diag = 0;

                for ( int  i = 0; i < m; ++i )
                {
                    if ( i == j )
                        continue;

                    der[i] = ( _weights[i] / _weights[j] ) / ( nodes[j] - nodes[i] );
                    diag  -= der[i];
                }// for

                der[j] = diag;
            }// if

            return;
        }// if
    }// for

    double  s  = 0;
    double  ds = 0;

    for ( int  i = 0; i < m; ++i )
    {
        const double  q = _weights[i] / ( x - nodes[i] );

        val[i] = q;
        s     += q;
        ds    -= q / ( x - nodes[i] );
    }// for

    for ( int  i = 0; i < m; ++i )
    {
        const double  r = val[i] / s;

        if ( der != nullptr )
            der[i] = r * ( -1.0 / ( x - nodes[i] ) - ds / s );

        val[i] = r;
    }// for
}

double
tensor_grid::lagrange ( std::size_t nu, const vec3 & x ) const
{
    const auto     mi = multi_index( nu );
    double         result = 1;
    constexpr int  max_m  = 64;
    double         val[max_m];

    if ( _degree + 1 > max_m )
        throw error( errc::out_of_range, "interpolation degree too large" );

    for ( int  i = 0; i < dim; ++i )
    {
        axis_values( i, x[i], val, nullptr );
        result *= val[ mi[i] ];
    }// for

    return result;
}

void
tensor_grid::lagrange_all ( const vec3 & x, std::span< double > out ) const
{
    const int      m = _degree + 1;
    constexpr int  max_m = 64;
    double         v[3][max_m];

    if ( m > max_m )
        throw error( errc::out_of_range, "interpolation degree too large" );

    for ( int  i = 0; i < dim; ++i )
        axis_values( i, x[i], v[i], nullptr );

    std::size_t  nu = 0;

    for ( int  c = 0; c < m; ++c )
        for ( int  b = 0; b < m; ++b )
        {
            const double  vbc = v[1][b] * v[2][c];

            for ( int  a = 0; a < m; ++a )
                out[nu++] = v[0][a] * vbc;
        }// for
}

void
tensor_grid::derivative_all ( const vec3 & x, const vec3 & direction, std::span< double > out ) const
{
    const int      m = _degree + 1;
    constexpr int  max_m = 64;
    double         v[3][max_m];
    double         d[3][max_m];

    if ( m > max_m )
        throw error( errc::out_of_range, "interpolation degree too large" );

    for ( int  i = 0; i < dim; ++i )
        axis_values( i, x[i], v[i], d[i] );

    std::size_t  nu = 0;

    for ( int  c = 0; c < m; ++c )
        for ( int  b = 0; b < m; ++b )
            for ( int  a = 0; a < m; ++a )
                out[nu++] = ( direction[0] * d[0][a] * v[1][b] * v[2][c] +
                              direction[1] * v[0][a] * d[1][b] * v[2][c] +
                              direction[2] * v[0][a] * v[1][b] * d[2][c] );
}

tensor_grid
tensor_grid::shifted ( const vec3 & m ) const
{
    tensor_grid  g = *this;

    g._box = _box.translated( m );

    for ( int  i = 0; i < dim; ++i )
        for ( auto &  x : g._nodes[i] )
            x += m[i];

    return g;
}

}// namespace tih2
