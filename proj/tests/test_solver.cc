//
// unit tests: conjugate gradients, Dirichlet data, Neumann errors
//

#include <cmath>

#include <doctest.h>

#include <tih2/h2matrix.hh>
#include <tih2/quadkernel.hh>
#include <tih2/solver.hh>

using namespace tih2;

TEST_CASE( "cg on identity and 2x2" )
{
    std::vector< double >  b{ 1.0, -2.0, 3.0 };
    auto                   id = [] ( std::span< const double > x, std::span< double > y ) {
        std::copy( x.begin(), x.end(), y.begin() );
    };

    auto  r = cg_solve( id, b, 1e-12, 10 );

    CHECK( r.iterations == 1 );
    CHECK( r.x == b );

    auto  a = [] ( std::span< const double > x, std::span< double > y ) {
        y[0] = 2 * x[0] + x[1];
        y[1] = x[0] + 2 * x[1];
    };
    std::vector< double >  rhs{ 1.0, 0.0 };

    r = cg_solve( a, rhs, 1e-12, 10 );

    CHECK( r.x[0] == doctest::Approx( 2.0 / 3.0 ).epsilon( 1e-12 ) );
    CHECK( r.x[1] == doctest::Approx( -1.0 / 3.0 ).epsilon( 1e-12 ) );
    CHECK( r.iterations <= 2 );

    // zero right-hand side
    std::vector< double >  zero( 2, 0.0 );

    r = cg_solve( a, zero, 1e-6, 10 );
    CHECK( r.iterations == 0 );
    CHECK( r.x == zero );
}

TEST_CASE( "cg failure carries the residual history" )
{
    // diag(1..50) needs more than 3 steps
    auto  a = [] ( std::span< const double > x, std::span< double > y ) {
        for ( std::size_t  i = 0; i < x.size(); ++i ) y[i] = double( i + 1 ) * x[i];
    };
    std::vector< double >  b( 50, 1.0 );

    try
    {
        cg_solve( a, b, 1e-10, 3 );
        FAIL( "no exception" );
    }// try
    catch ( const convergence_error &  e )
    {
        CHECK( e.code() == errc::not_converged );
        CHECK( e.history().size() == 4 );
        CHECK( e.history().back() > 1e-10 );
    }// catch

    CHECK_THROWS_AS( cg_solve( a, b, 0.0, 3 ), tih2::error );

    auto  indefinite = [] ( std::span< const double > x, std::span< double > y ) {
        for ( std::size_t  i = 0; i < x.size(); ++i ) y[i] = -x[i];
    };

    CHECK_THROWS_AS( cg_solve( indefinite, b, 1e-6, 10 ), convergence_error );
}

TEST_CASE( "cg residual recurrence matches true residual" )
{
    auto  mesh = std::make_shared< const surface_mesh >( make_sphere_mesh( 2 ) );
    auto  p0   = make_basis( mesh, basis_kind::piecewise_constant );

    galerkin_quadrature  quad( *mesh );
    const dense_matrix   v = dense_assemble( kernel_kind::single_layer, p0, p0, quad );

    auto  a = [&] ( std::span< const double > x, std::span< double > y ) {
        Eigen::Map< Eigen::VectorXd >( y.data(), Eigen::Index( y.size() ) ) =
            v * Eigen::Map< const Eigen::VectorXd >( x.data(), Eigen::Index( x.size() ) );
    };

    std::vector< double >  b( p0.size() );

    for ( std::size_t  i = 0; i < b.size(); ++i ) b[i] = std::sin( double( i ) );

    const auto  r = cg_solve( a, b, 1e-8, 500 );

    std::vector< double >  ax( b.size() );

    a( r.x, ax );

    double  res = 0, nb = 0;

    for ( std::size_t  i = 0; i < b.size(); ++i ) { res += ( b[i] - ax[i] ) * ( b[i] - ax[i] ); nb += b[i] * b[i]; }

    CHECK( std::abs( std::sqrt( res / nb ) - r.residuals.back() ) <= 1e-8 );
    CHECK( r.residuals.back() <= 1e-8 );
    CHECK( int( r.residuals.size() ) == r.iterations + 1 );
}

TEST_CASE( "Dirichlet data" )
{
    dirichlet_problem  p;

    CHECK( p.value( { 1, 0, 0 } ) == doctest::Approx( 1.0 / std::sqrt( 2.92 ) ).epsilon( 1e-14 ) );

    // gradient by central differences
    const vec3    x{ 0.3, -0.5, 0.8 };
    const double  h = 1e-5;

    for ( int  i = 0; i < 3; ++i )
    {
        vec3  xp = x, xm = x;

        xp[i] += h;
        xm[i] -= h;
        CHECK( p.gradient( x )[i] == doctest::Approx( ( p.value( xp ) - p.value( xm ) ) / ( 2 * h ) ).epsilon( 1e-8 ) );
    }// for

    auto  mesh = std::make_shared< const surface_mesh >( make_sphere_mesh( 3 ) );
    auto  p1   = make_basis( mesh, basis_kind::piecewise_linear );

    SUBCASE( "nodal interpolation" )
    {
        const auto  c = project_dirichlet( p1, [&] ( const vec3 & y ) { return p.value( y ); } );

        bool  found = false;

        for ( index_t  j = 0; j < p1.size(); ++j )
        {
            const auto &  v = p1.characteristic_point( j );

            if ( v[0] == 1 && v[1] == 0 && v[2] == 0 )
            {
                found = true;
                CHECK( c[j] == doctest::Approx( 1.0 / std::sqrt( 2.92 ) ).epsilon( 1e-14 ) );
            }// if
        }// for

        CHECK( found );

        const auto  k = project_dirichlet( p1, [] ( const vec3 & ) { return 2.5; } );

        for ( auto  v : k ) CHECK( v == 2.5 );
    }

    SUBCASE( "Gram projection reproduces functions of the space" )
    {
        // linear function restricted to flat triangles lies in the space
        auto  f = [] ( const vec3 & y ) { return 1.0 + 2.0 * y[0] - y[1] + 0.5 * y[2]; };
        const auto  nodal = project_dirichlet( p1, f );
        const auto  gram  = project_dirichlet( p1, f, true );

        double  worst = 0;

        for ( std::size_t  j = 0; j < nodal.size(); ++j )
            worst = std::max( worst, std::abs( nodal[j] - gram[j] ) );

        CHECK( worst <= 1e-10 );

        const auto  c = project_dirichlet( p1, [] ( const vec3 & ) { return -1.0; }, true );

        for ( auto  v : c ) CHECK( v == doctest::Approx( -1.0 ).epsilon( 1e-10 ) );
    }

    auto  p0 = make_basis( mesh, basis_kind::piecewise_constant );

    CHECK_THROWS_AS( project_dirichlet( p0, [] ( const vec3 & ) { return 1.0; } ), tih2::error );
}

TEST_CASE( "Neumann error of the best approximation" )
{
    dirichlet_problem  p;
    auto               mesh = std::make_shared< const surface_mesh >( make_sphere_mesh( 3 ) );
    auto               p0   = make_basis( mesh, basis_kind::piecewise_constant );

    const auto    best = neumann_projection( p0, p );
    const double  e0   = neumann_l2_error( p0, best, p );

    MESSAGE( "best approximation error n=512: " << e0 );
    CHECK( e0 > 0 );
    CHECK( e0 < 0.1 );

    // any perturbation is worse
    for ( int  trial = 0; trial < 5; ++trial )
    {
        auto  x = best;

        for ( std::size_t  i = 0; i < x.size(); ++i )
            x[i] += 1e-3 * std::cos( double( 7 * i + trial ) );

        CHECK( neumann_l2_error( p0, x, p ) > e0 );
    }// for

    std::vector< double >  zero( p0.size(), 0.0 );

    CHECK( neumann_l2_error( p0, zero, p ) == doctest::Approx( 1.0 ).epsilon( 1e-14 ) );

    // first-order convergence of the best approximation
    auto          mesh4 = std::make_shared< const surface_mesh >( make_sphere_mesh( 4 ) );
    auto          q0    = make_basis( mesh4, basis_kind::piecewise_constant );
    const double  e1    = neumann_l2_error( q0, neumann_projection( q0, p ), p );

    MESSAGE( "best approximation error n=2048: " << e1 << " ratio " << e0 / e1 );
    CHECK( e0 / e1 > 1.7 );

    CHECK_THROWS_AS( neumann_l2_error( p0, zero, p, 3 ), tih2::error );
    CHECK_THROWS_AS( neumann_l2_error( p0, std::vector< double >( 3 ), p ), tih2::error );
}

TEST_CASE( "n=512 single layer system converges" )
{
    auto        mesh = std::make_shared< const surface_mesh >( make_sphere_mesh( 3 ) );
    const auto  op   = make_operator_setup( mesh, kernel_kind::single_layer, 2, 2.0, 2.0, h2_variant::deduplicated );
    const auto  v    = assemble( op, {} );
    std::vector< double >  b( v.rows(), 1.0 );

    const auto  r = cg_solve( [&] ( std::span< const double > x, std::span< double > y ) { v.matvec( x, y ); },
                              b, 1e-6, 1000 );

    MESSAGE( "n=512 cg iterations " << r.iterations );
    CHECK( r.residuals.back() <= 1e-6 );
    CHECK( r.iterations >= 5 );
    CHECK( r.iterations <= 60 );
}
