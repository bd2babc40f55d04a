//
// unit tests: tensor Chebyshev interpolation
//

#include <cmath>
#include <random>

#include <doctest.h>

#include <tih2/error.hh>
#include <tih2/interpolation.hh>

using namespace tih2;

namespace {

vec3
random_point ( std::mt19937_64 & rng, const axis_box & b )
{
    std::uniform_real_distribution< double >  u( 0, 1 );
    vec3                                      x;

    for ( int i = 0; i < 3; ++i )
        x[i] = b.lower[i] + u( rng ) * ( b.upper[i] - b.lower[i] );

    return x;
}

}

TEST_CASE( "chebyshev nodes" )
{
    auto  n0 = chebyshev_nodes( 0, -1, 1 );

    REQUIRE( n0.size() == 1 );
    CHECK( n0[0] == doctest::Approx( 0.0 ).epsilon( 1e-16 ) );

    auto  n1 = chebyshev_nodes( 1, -1, 1 );

    REQUIRE( n1.size() == 2 );
    CHECK( std::min( n1[0], n1[1] ) == doctest::Approx( -std::sqrt( 0.5 ) ).epsilon( 1e-15 ) );
    CHECK( std::max( n1[0], n1[1] ) == doctest::Approx(  std::sqrt( 0.5 ) ).epsilon( 1e-15 ) );

    auto  n2 = chebyshev_nodes( 2, 0, 2 );

    std::sort( n2.begin(), n2.end() );
    CHECK( n2[0] == doctest::Approx( 1 - std::sqrt( 3.0 ) / 2 ).epsilon( 1e-15 ) );
    CHECK( n2[1] == doctest::Approx( 1.0 ).epsilon( 1e-15 ) );
    CHECK( n2[2] == doctest::Approx( 1 + std::sqrt( 3.0 ) / 2 ).epsilon( 1e-15 ) );

    // strictly inside, symmetric
    for ( int deg = 0; deg <= 9; ++deg )
    {
        auto  n = chebyshev_nodes( deg, 2, 5 );

        std::sort( n.begin(), n.end() );

        for ( std::size_t i = 0; i < n.size(); ++i )
        {
            CHECK( n[i] > 2 );
            CHECK( n[i] < 5 );
            CHECK( n[i] + n[ n.size() - 1 - i ] == doctest::Approx( 7.0 ).epsilon( 1e-14 ) );
        }// for
    }// for

    CHECK_THROWS_AS( chebyshev_nodes( 2, 1, 0 ), error );
}

TEST_CASE( "tensor grid layout" )
{
    const axis_box     b{ { 0, 0, 0 }, { 1, 2, 3 } };
    const tensor_grid  g( 3, b );

    CHECK( g.size() == 64 );
    CHECK( tensor_rank( 4 ) == 125 );
    CHECK( tensor_rank( 5 ) == 216 );

    for ( std::size_t nu = 0; nu < g.size(); ++nu )
    {
        const auto  mi = g.multi_index( nu );

        CHECK( std::size_t( mi[0] + 4 * ( mi[1] + 4 * mi[2] ) ) == nu );
        CHECK( b.contains( g.point( nu ) ) );

        for ( int a = 0; a < 3; ++a )
            CHECK( g.point( nu )[a] == g.nodes( a )[ mi[a] ] );
    }// for
}

TEST_CASE( "cardinal property and partition of unity" )
{
    const axis_box         b{ { -1, 0.5, 2 }, { 0, 1.5, 4 } };
    std::mt19937_64        rng( 7 );
    std::vector< double >  vals;

    for ( int deg = 0; deg <= 6; ++deg )
    {
        const tensor_grid  g( deg, b );

        vals.resize( g.size() );

        for ( std::size_t mu = 0; mu < g.size(); ++mu )
        {
            g.lagrange_all( g.point( mu ), vals );

            for ( std::size_t nu = 0; nu < g.size(); ++nu )
            {
                CHECK( vals[nu] == doctest::Approx( nu == mu ? 1.0 : 0.0 ).epsilon( 1e-14 ) );
                CHECK( g.lagrange( nu, g.point( mu ) ) == doctest::Approx( nu == mu ? 1.0 : 0.0 ).epsilon( 1e-14 ) );
            }// for
        }// for

        for ( int r = 0; r < 20; ++r )
        {
            g.lagrange_all( random_point( rng, b ), vals );

            double  sum = 0;

            for ( auto  v : vals ) sum += v;

            CHECK( sum == doctest::Approx( 1.0 ).epsilon( 1e-13 ) );
        }// for
    }// for
}

TEST_CASE( "polynomial reproduction" )
{
    const axis_box         b{ { 0, 0, 0 }, { 1, 1, 1 } };
    std::mt19937_64        rng( 11 );
    std::vector< double >  vals;

    // f = x1 x2 for degree >= 1
    for ( int deg = 1; deg <= 5; ++deg )
    {
        const tensor_grid  g( deg, b );

        vals.resize( g.size() );

        for ( int r = 0; r < 100; ++r )
        {
            const vec3  x = random_point( rng, b );

            g.lagrange_all( x, vals );

            double  s = 0;

            for ( std::size_t nu = 0; nu < g.size(); ++nu )
            {
                const auto  p = g.point( nu );

                s += vals[nu] * p[0] * p[1];
            }// for

            CHECK( s == doctest::Approx( x[0] * x[1] ).epsilon( 1e-12 ).scale( 1 ) );
        }// for
    }// for

    // full coordinate degree 3 in each variable
    const tensor_grid  g( 3, b );
    auto               f = [] ( const vec3 & p ) { return p[0] * p[0] * p[0] * p[1] * p[1] - 2 * p[2] * p[2] * p[2] * p[0] + 0.5; };

    vals.resize( g.size() );

    for ( int r = 0; r < 50; ++r )
    {
        const vec3  x = random_point( rng, b );
        double      s = 0;

        g.lagrange_all( x, vals );

        for ( std::size_t nu = 0; nu < g.size(); ++nu )
            s += vals[nu] * f( g.point( nu ) );

        CHECK( s == doctest::Approx( f( x ) ).epsilon( 1e-12 ).scale( 1 ) );
    }// for
}

TEST_CASE( "shifted grids" )
{
    const axis_box     b{ { 0, 0, 0 }, { 1, 1, 1 } };
    const tensor_grid  g( 3, b );
    const tensor_grid  z = g.shifted( { 0, 0, 0 } );

    for ( std::size_t nu = 0; nu < g.size(); ++nu )
        CHECK( z.point( nu ) == g.point( nu ) );

    const tensor_grid  s = g.shifted( { 1, 0, 0 } );

    CHECK( s.box().lower == vec3{ 1, 0, 0 } );
    CHECK( s.box().upper == vec3{ 2, 1, 1 } );

    for ( std::size_t nu = 0; nu < g.size(); ++nu )
    {
        CHECK( s.point( nu )[0] == doctest::Approx( g.point( nu )[0] + 1 ).epsilon( 1e-15 ) );
        CHECK( s.point( nu )[1] == g.point( nu )[1] );
    }// for

    std::mt19937_64                           rng( 3 );
    std::uniform_real_distribution< double >  u( -3, 3 );

    for ( int r = 0; r < 100; ++r )
    {
        const vec3         m{ u( rng ), u( rng ), u( rng ) };
        const tensor_grid  gm = g.shifted( m );
        const vec3         x  = random_point( rng, gm.box() );

        for ( std::size_t nu = 0; nu < g.size(); nu += 7 )
            CHECK( std::abs( gm.lagrange( nu, x ) - g.lagrange( nu, x - m ) ) < 1e-13 );
    }// for
}

TEST_CASE( "directional derivatives" )
{
    const axis_box         b{ { 0, -1, 0.5 }, { 2, 1, 1.5 } };
    std::mt19937_64        rng( 5 );
    const double           h = 1e-5;

    for ( int deg = 0; deg <= 5; ++deg )
    {
        const tensor_grid      g( deg, b );
        std::vector< double >  d( g.size() ), vp( g.size() ), vm( g.size() );

        for ( int r = 0; r < 10; ++r )
        {
            vec3  x = random_point( rng, b );
            vec3  n{ 0.3, -0.5, 0.8 };

            // include interpolation nodes, where the barycentric form is singular
            if ( r == 0 )
                x = g.point( g.size() / 2 );

            if ( r == 1 )
                x = vec3{ g.nodes( 0 )[0], x[1], g.nodes( 2 )[ deg ] };

            g.derivative_all( x, n, d );
            g.lagrange_all( x + h * n, vp );
            g.lagrange_all( x - h * n, vm );

            for ( std::size_t nu = 0; nu < g.size(); ++nu )
                CHECK( d[nu] == doctest::Approx( ( vp[nu] - vm[nu] ) / ( 2 * h ) ).epsilon( 1e-6 ).scale( 1 ) );
        }// for

        if ( deg == 0 )
            for ( auto  v : d ) CHECK( v == 0.0 );
    }// for
}
