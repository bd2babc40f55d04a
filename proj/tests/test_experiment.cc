//
// unit tests: experiment configuration, reports, comparisons
//

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include <tih2/error.hh>
#include <tih2/experiment.hh>

using namespace tih2;
namespace fs = std::filesystem;

namespace {

std::string
slurp ( const fs::path & p )
{
    std::ifstream       in( p );
    std::ostringstream  s;

    s << in.rdbuf();

    return s.str();
}

fs::path
scratch_dir ( const std::string & name )
{
    auto  p = fs::temp_directory_path() / ( "tih2_test_" + name );

    fs::remove_all( p );

    return p;
}

// message of the validation error, empty if valid
std::string
validation_message ( const experiment_config & c )
{
    try
    {
        validate( c );
    }// try
    catch ( const tih2::error &  e )
    {
        return e.what();
    }// catch

    return {};
}

}// namespace anonymous

TEST_CASE( "theta schedule" )
{
    experiment_config  c;

    CHECK( c.theta_for( 5 ) == 4 );
    CHECK( c.theta_for( 3 ) == 2 );
    CHECK( c.theta_for( 4 ) == 3 );
    CHECK( c.theta_for( 7 ) == 6 );
}

TEST_CASE( "config validation names the field" )
{
    experiment_config  c;

    CHECK( validation_message( c ).empty() );

    auto  expect = [] ( experiment_config c, const std::string & field ) {
        const auto  msg = validation_message( c );

        CHECK_MESSAGE( msg.find( field ) != std::string::npos, msg );
    };

    { auto d = c; d.eta = 0;            expect( d, "eta" ); }
    { auto d = c; d.eta = -1;           expect( d, "eta" ); }
    { auto d = c; d.crk = 0;            expect( d, "crk" ); }
    { auto d = c; d.rel_tol = 0;        expect( d, "rel_tol" ); }
    { auto d = c; d.max_iter = 0;       expect( d, "max_iter" ); }
    { auto d = c; d.refinements = {};   expect( d, "refinements" ); }
    { auto d = c; d.refinements = { 4, 3 }; expect( d, "refinements" ); }
    { auto d = c; d.refinements = { 3, 3 }; expect( d, "refinements" ); }
    { auto d = c; d.theta_base = 1;     expect( d, "theta_base" ); }   // theta(3) = -1
    { auto d = c; d.out_dir = "";       expect( d, "out_dir" ); }

    auto  d = c;

    d.dense_check = true;
    CHECK_THROWS_AS( validate( d ), tih2::error );

    d.refinements = { 3, 4 };
    CHECK_NOTHROW( validate( d ) );

    experiment_config  bad;

    bad.eta = 0;
    CHECK_THROWS_AS( run_experiment( bad ), tih2::error );
}

TEST_CASE( "desk-scale run and byte-identical rerun" )
{
    experiment_config  c;

    c.refinements     = { 3 };
    c.theta_base      = 3;
    c.base_refinement = 3;
    c.kernel          = kernel_selection::slp;
    c.variant         = variant_selection::dedup;

    const auto  d1 = scratch_dir( "run1" );
    const auto  d2 = scratch_dir( "run2" );

    c.out_dir = d1.string();

    std::vector< std::string >  log;
    const auto                  r = run_experiment( c, [&] ( const std::string & s ) { log.push_back( s ); } );

    REQUIRE( r.dedup.size() == 1 );
    CHECK( r.conventional.empty() );
    CHECK( ! log.empty() );

    const auto &  row = r.dedup[0];

    CHECK( row.n == 512 );
    CHECK( row.theta == 3 );
    CHECK( row.k == 64 );
    CHECK( row.lmax_ii == 3 );
    CHECK( row.solved );
    CHECK( row.eps_l2 < 0.1 );
    CHECK( row.cg_iterations > 0 );
    CHECK( row.has_slp );
    CHECK( ! row.has_dlp );

    const auto  params = slurp( d1 / "parameters_dedup.csv" );

    CHECK( params.rfind( "n,theta,k,lmax_II,lmax_IJ,eps_L2,cg_iterations\n512,3,64,3,3,", 0 ) == 0 );
    CHECK( std::count( params.begin(), params.end(), '\n' ) == 2 );
    CHECK( fs::exists( d1 / "storage_slp_dedup.csv" ) );
    CHECK( ! fs::exists( d1 / "storage_dlp_dedup.csv" ) );
    CHECK( fs::exists( d1 / "timings_dedup.csv" ) );

    c.out_dir = d2.string();
    run_experiment( c );

    for ( auto  f : { "parameters_dedup.csv", "storage_slp_dedup.csv" } )
        CHECK_MESSAGE( slurp( d1 / f ) == slurp( d2 / f ), f );

    fs::remove_all( d1 );
    fs::remove_all( d2 );
}

TEST_CASE( "both variants with comparison and dense check" )
{
    experiment_config  c;

    c.refinements = { 3 };
    c.variant     = variant_selection::both;
    c.dense_check = true;
    c.gram_projection = true;

    const auto  d = scratch_dir( "both" );

    c.out_dir = d.string();

    const auto  r = run_experiment( c );

    REQUIRE( r.dedup.size() == 1 );
    REQUIRE( r.conventional.size() == 1 );

    for ( auto  f : { "parameters_dedup.csv", "parameters_conventional.csv", "storage_slp_dedup.csv",
                      "storage_dlp_dedup.csv", "storage_slp_conventional.csv", "storage_dlp_conventional.csv",
                      "accuracy_dedup.csv", "accuracy_conventional.csv", "compare_slp.csv", "compare_dlp.csv" } )
        CHECK_MESSAGE( fs::exists( d / f ), f );

    CHECK( r.dedup[0].slp_dense_error > 0 );
    CHECK( r.dedup[0].slp_dense_error < 1e-2 );
    CHECK( r.dedup[0].dlp_identity < 0.05 );

    // conventional and dedup accuracy comparable
    const double  a = r.dedup[0].eps_l2, b = r.conventional[0].eps_l2;

    MESSAGE( "n=512 eps dedup " << a << " conventional " << b );
    CHECK( std::abs( a - b ) <= 0.1 * a );

    fs::remove_all( d );
}

TEST_CASE( "compare_reports" )
{
    const auto  d = scratch_dir( "cmp" );

    fs::create_directories( d );

    {
        std::ofstream  a( d / "a.csv" ), b( d / "b.csv" ), c( d / "c.csv" ), e( d / "e.csv" );

        a << "n,theta,k,lmax,leaf_MB,transfer_MB,nearfield_MB,coupling_MB\n"
          << "512,2,27,6,0.2109,0.1335,1.3704,1.1235\n"
          << "2048,3,64,6,2.0000,0.7500,21.0000,3.3125\n";
        b << "n,theta,k,lmax,leaf_MB,transfer_MB,nearfield_MB,coupling_MB\n"
          << "512,2,27,4,0.2109,0.2670,2.7408,0.5618\n"
          << "2048,3,64,5,2.0000,3.0000,21.0000,6.6250\n";
        c << "n,theta,k,lmax,leaf_MB,transfer_MB,nearfield_MB,coupling_MB\n"
          << "512,2,27,6,0.2109,0.1335,1.3704,1.1235\n";
        e << "n,theta,k,lmax,leaf_MB,transfer_MB,nearfield_MB,coupling_MB\n"
          << "512,2,27,6,0.2109,0.1335,1.3704,1.1235\n"
          << "8192,4,125,9,15.625,4.2915,72.7667,51.7368\n";
    }

    compare_reports( ( d / "a.csv" ).string(), ( d / "a.csv" ).string(), ( d / "same.csv" ).string() );
    CHECK( slurp( d / "same.csv" ) == "n,leaf_ratio,transfer_ratio,nearfield_ratio,coupling_ratio\n"
                                      "512,1.0000,1.0000,1.0000,1.0000\n"
                                      "2048,1.0000,1.0000,1.0000,1.0000\n" );

    compare_reports( ( d / "a.csv" ).string(), ( d / "b.csv" ).string(), ( d / "ab.csv" ).string() );
    CHECK( slurp( d / "ab.csv" ) == "n,leaf_ratio,transfer_ratio,nearfield_ratio,coupling_ratio\n"
                                    "512,1.0000,2.0000,2.0000,0.5000\n"
                                    "2048,1.0000,4.0000,1.0000,2.0000\n" );

    CHECK_THROWS_AS( compare_reports( ( d / "a.csv" ).string(), ( d / "c.csv" ).string(), ( d / "x.csv" ).string() ),
                     tih2::error );
    CHECK_THROWS_AS( compare_reports( ( d / "a.csv" ).string(), ( d / "e.csv" ).string(), ( d / "x.csv" ).string() ),
                     tih2::error );
    CHECK_THROWS_AS( compare_reports( ( d / "missing.csv" ).string(), ( d / "a.csv" ).string(), ( d / "x.csv" ).string() ),
                     tih2::error );

    fs::remove_all( d );
}
