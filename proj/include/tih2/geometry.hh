#ifndef TIH2_GEOMETRY_HH
#define TIH2_GEOMETRY_HH
//
// Project     : tih2
// Module      : geometry
// Description : small fixed-size vectors and axis-parallel boxes
//

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>

namespace tih2 {

// spatial dimension of all geometry handled here
inline constexpr int  dim = 3;

using index_t = std::uint32_t;
using vec3    = std::array< double, 3 >;
using ivec3   = std::array< std::int64_t, 3 >;

inline constexpr index_t  no_index = std::numeric_limits< index_t >::max();

inline vec3  operator + ( const vec3 & a, const vec3 & b ) { return { a[0]+b[0], a[1]+b[1], a[2]+b[2] }; }
inline vec3  operator - ( const vec3 & a, const vec3 & b ) { return { a[0]-b[0], a[1]-b[1], a[2]-b[2] }; }
inline vec3  operator * ( double s, const vec3 & a )       { return { s*a[0], s*a[1], s*a[2] }; }

inline double dot   ( const vec3 & a, const vec3 & b ) { return a[0]*b[0] + a[1]*b[1] + a[2]*b[2]; }
inline double norm2 ( const vec3 & a )                 { return std::sqrt( dot( a, a ) ); }

inline vec3
cross ( const vec3 & a, const vec3 & b )
{
    return { a[1]*b[2] - a[2]*b[1],
             a[2]*b[0] - a[0]*b[2],
             a[0]*b[1] - a[1]*b[0] };
}

// componentwise (Hadamard) product with an integer vector
inline vec3
hadamard ( const vec3 & a, const ivec3 & p )
{
    return { a[0] * double(p[0]), a[1] * double(p[1]), a[2] * double(p[2]) };
}

//
// closed axis-parallel box [lower, upper]
//
struct axis_box
{
    vec3  lower{ 0, 0, 0 };
    vec3  upper{ 0, 0, 0 };

    vec3   extent   () const { return upper - lower; }
    double diameter () const { return norm2( upper - lower ); }
    double volume   () const { const auto e = extent(); return e[0] * e[1] * e[2]; }

    bool
    contains ( const vec3 & x ) const
    {
        for ( int i = 0; i < dim; ++i )
            if ( x[i] < lower[i] || x[i] > upper[i] )
                return false;
        return true;
    }

    bool
    contains ( const axis_box & b ) const
    {
        return contains( b.lower ) && contains( b.upper );
    }

    axis_box translated ( const vec3 & m ) const { return { lower + m, upper + m }; }

    void
    include ( const vec3 & x )
    {
        for ( int i = 0; i < dim; ++i )
        {
            lower[i] = std::min( lower[i], x[i] );
            upper[i] = std::max( upper[i], x[i] );
        }
    }

    void
    include ( const axis_box & b )
    {
        include( b.lower );
        include( b.upper );
    }

    static axis_box
    empty ()
    {
        constexpr double  inf = std::numeric_limits< double >::infinity();
        return { { inf, inf, inf }, { -inf, -inf, -inf } };
    }
};

//
// Euclidean distance of two boxes from the per-axis interval gaps
//
inline double
distance ( const axis_box & a, const axis_box & b )
{
    double  sum = 0;

    for ( int i = 0; i < dim; ++i )
    {
        const double  gap = std::max( { 0.0, a.lower[i] - b.upper[i], b.lower[i] - a.upper[i] } );

        sum += gap * gap;
    }

    return std::sqrt( sum );
}

}// namespace tih2

#endif // TIH2_GEOMETRY_HH
