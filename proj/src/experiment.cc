//
// Project     : tih2
// Module      : cli
// Description : refinement experiments for the Dirichlet problem on the
//               unit sphere with CSV reports
//

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <tih2/error.hh>
#include <tih2/experiment.hh>
#include <tih2/solver.hh>

namespace tih2 {

namespace fs = std::filesystem;

namespace {

// largest octahedron refinement accepted by the driver (n = 8 * 4^8 = 524288)
constexpr int  max_refinement = 8;

using clock_type = std::chrono::steady_clock;

double
seconds_since ( clock_type::time_point t0 )
{
    return std::chrono::duration< double >( clock_type::now() - t0 ).count();
}

void
invalid ( const std::string & field, const std::string & why )
{
    throw error( errc::invalid_argument, "experiment config: " + field + " " + why );
}

double
norm2 ( std::span< const double > x )
{
    double  s = 0;

    for ( auto  v : x ) s += v * v;

    return std::sqrt( s );
}

// max over random unit vectors of ||(A~ - A) x|| / ||A x||
double
dense_error ( const h2matrix & h, const galerkin_quadrature & quad, std::uint64_t seed )
{
    const dense_matrix                  d = dense_assemble( h.kernel(), h.row_basis(), h.col_basis(), quad );
    std::mt19937_64                     rng( seed );
    std::normal_distribution< double >  g;
    double                              worst = 0;

    for ( int  trial = 0; trial < 10; ++trial )
    {
        Eigen::VectorXd  x( Eigen::Index( h.cols() ) );

        for ( Eigen::Index  i = 0; i < x.size(); ++i ) x[i] = g( rng );

        x /= x.norm();

        const Eigen::VectorXd  yd = d * x;
        Eigen::VectorXd        yh( Eigen::Index( h.rows() ) );

        h.matvec( { x.data(), std::size_t( x.size() ) }, { yh.data(), std::size_t( yh.size() ) } );
        worst = std::max( worst, ( yh - yd ).norm() / yd.norm() );
    }// for

    return worst;
}

std::string
variant_name ( h2_variant v )
{
    return v == h2_variant::deduplicated ? "dedup" : "conventional";
}

std::ofstream
open_output ( const fs::path & p )
{
    std::ofstream  out( p );

    if ( ! out )
        throw error( errc::io_error, "cannot write " + p.string() );

    return out;
}

std::string
format ( const char * fmt, double v )
{
    char  buf[64];

    std::snprintf( buf, sizeof( buf ), fmt, v );

    return buf;
}

experiment_row
run_refinement ( const experiment_config &  cfg,
                 int                        refinement,
                 h2_variant                 variant,
                 const progress_callback &  progress )
{
    const bool      want_slp = cfg.kernel != kernel_selection::dlp;
    const bool      want_dlp = cfg.kernel != kernel_selection::slp;
    const int       theta    = cfg.theta_for( refinement );
    experiment_row  row;

    auto  t0   = clock_type::now();
    auto  mesh = std::make_shared< const surface_mesh >( make_sphere_mesh( refinement ) );

    const auto  gop = make_operator_setup( mesh, kernel_kind::single_layer, theta, cfg.eta, cfg.crk, variant );
    const auto  kop = make_operator_setup( mesh, kernel_kind::double_layer, theta, cfg.eta, cfg.crk, variant );

    row.n       = mesh->triangle_count();
    row.theta   = theta;
    row.k       = tensor_rank( theta );
    row.lmax_ii = gop.lmax;
    row.lmax_ij = kop.lmax;
    row.time_setup = seconds_since( t0 );

    if ( progress )
        progress( variant_name( variant ) + ": n=" + std::to_string( row.n ) + " theta=" + std::to_string( theta ) +
                  " lmax=" + std::to_string( row.lmax_ii ) + "/" + std::to_string( row.lmax_ij ) );

    // K~ + 1/2 M with the mass folded into the nearfield; needed by the solve
    t0 = clock_type::now();

    h2_options  kopts;

    kopts.mass_factor = 0.5;

    const h2matrix  k = assemble( kop, kopts );
    h2matrix        g;

    if ( want_slp )
        g = assemble( gop, {} );

    row.time_assembly = seconds_since( t0 );

    if ( want_dlp )
    {
        row.has_dlp     = true;
        row.dlp_storage = k.storage();

        // (K + 1/2 M) 1 vanishes on closed surfaces
        std::vector< double >  one( k.cols(), 1.0 ), y( k.rows() ), half( k.rows(), 0.0 );

        k.matvec( one, y );
        sparse_matvec( assemble_mass( kop.rows, kop.cols ), one, half, 0.5 );
        row.dlp_identity = norm2( y ) / norm2( half );
    }// if

    if ( want_slp )
    {
        row.has_slp     = true;
        row.slp_storage = g.storage();

        t0 = clock_type::now();

        const dirichlet_problem  problem;
        const auto               b = project_dirichlet( kop.cols, [&] ( const vec3 & x ) { return problem.value( x ); },
                                                        cfg.gram_projection );
        const auto               rhs = k.apply( b );
        const auto               res = cg_solve( [&] ( std::span< const double > x, std::span< double > y ) { g.matvec( x, y ); },
                                                 rhs, cfg.rel_tol, cfg.max_iter );

        row.solved        = true;
        row.cg_iterations = res.iterations;
        row.residuals     = res.residuals;
        row.eps_l2        = neumann_l2_error( gop.rows, res.x, problem );
        row.time_solve    = seconds_since( t0 );

        if ( progress )
            progress( variant_name( variant ) + ": n=" + std::to_string( row.n ) + " cg " +
                      std::to_string( res.iterations ) + " iterations, eps_L2 " + format( "%.4e", row.eps_l2 ) );
    }// if

    if ( cfg.dense_check )
    {
        const galerkin_quadrature  quad( *mesh );

        if ( want_slp ) row.slp_dense_error = dense_error( g, quad, cfg.seed );

        if ( want_dlp )
        {
            // compare K~ without the mass term
            const h2matrix  kk = assemble( kop, {} );

            row.dlp_dense_error = dense_error( kk, quad, cfg.seed + 1 );
        }// if
    }// if

    return row;
}

void
write_reports ( const experiment_config &              cfg,
                const std::vector< experiment_row > &  rows,
                h2_variant                             variant )
{
    const fs::path     dir  = cfg.out_dir;
    const std::string  name = variant_name( variant );

    {
        auto  out = open_output( dir / ( "parameters_" + name + ".csv" ) );

        out << "n,theta,k,lmax_II,lmax_IJ,eps_L2,cg_iterations\n";

        for ( const auto &  r : rows )
        {
            out << r.n << ',' << r.theta << ',' << r.k << ',' << r.lmax_ii << ',' << r.lmax_ij << ',';

            if ( r.solved ) out << format( "%.6e", r.eps_l2 ) << ',' << r.cg_iterations;
            else            out << ',';

            out << '\n';
        }// for
    }

    for ( int  which = 0; which < 2; ++which )
    {
        const bool  slp = which == 0;

        if ( slp ? cfg.kernel == kernel_selection::dlp : cfg.kernel == kernel_selection::slp )
            continue;

        auto  out = open_output( dir / ( std::string( slp ? "storage_slp_" : "storage_dlp_" ) + name + ".csv" ) );

        write_storage_header( out );

        for ( const auto &  r : rows )
            write_storage_row( out, slp ? r.slp_storage : r.dlp_storage );
    }// for

    {
        auto  out = open_output( dir / ( "timings_" + name + ".csv" ) );

        out << "n,setup_s,assembly_s,solve_s\n";

        for ( const auto &  r : rows )
            out << r.n << ',' << format( "%.3f", r.time_setup ) << ',' << format( "%.3f", r.time_assembly ) << ','
                << format( "%.3f", r.time_solve ) << '\n';
    }

    if ( cfg.dense_check )
    {
        auto  out = open_output( dir / ( "accuracy_" + name + ".csv" ) );

        out << "n,theta,slp_rel_error,dlp_rel_error,dlp_identity\n";

        for ( const auto &  r : rows )
            out << r.n << ',' << r.theta << ','
                << ( r.slp_dense_error >= 0 ? format( "%.6e", r.slp_dense_error ) : "" ) << ','
                << ( r.dlp_dense_error >= 0 ? format( "%.6e", r.dlp_dense_error ) : "" ) << ','
                << ( r.dlp_identity >= 0 ? format( "%.6e", r.dlp_identity ) : "" ) << '\n';
    }// if
}

std::vector< std::vector< std::string > >
read_csv ( const std::string & path )
{
    std::ifstream  in( path );

    if ( ! in )
        throw error( errc::io_error, "cannot read " + path );

    std::vector< std::vector< std::string > >  rows;
    std::string                                line;

    while ( std::getline( in, line ) )
    {
        if ( line.empty() )
            continue;

        std::vector< std::string >  fields;
        std::stringstream           ss( line );
        std::string                 f;

        while ( std::getline( ss, f, ',' ) )
            fields.push_back( f );

        rows.push_back( std::move( fields ) );
    }// while

    return rows;
}

double
to_double ( const std::string & s, const std::string & path )
{
    std::size_t  pos = 0;
    double       v   = 0;

    try
    {
        v = std::stod( s, &pos );
    }// try
    catch ( const std::exception & )
    {
        pos = 0;
    }// catch

    if ( pos == 0 || pos != s.size() )
        throw error( errc::format_error, path + ": not a number: '" + s + "'" );

    return v;
}

}// namespace anonymous

void
validate ( const experiment_config & cfg )
{
    if ( cfg.refinements.empty() )
        invalid( "refinements", "must not be empty" );

    for ( std::size_t  i = 0; i < cfg.refinements.size(); ++i )
    {
        const int  r = cfg.refinements[i];

        if ( r < 0 || r > max_refinement )
            invalid( "refinements", "must lie in [0," + std::to_string( max_refinement ) + "]" );

        if ( i > 0 && r <= cfg.refinements[i-1] )
            invalid( "refinements", "must be sorted ascending without repeats" );

        if ( cfg.theta_for( r ) < 1 )
            invalid( "theta_base", "gives theta < 1 at refinement " + std::to_string( r ) );
    }// for

    if ( ! ( cfg.eta > 0 ) )          invalid( "eta", "must be positive" );
    if ( ! ( cfg.crk > 0 ) )          invalid( "crk", "must be positive" );
    if ( ! ( cfg.rel_tol > 0 && cfg.rel_tol < 1 ) ) invalid( "rel_tol", "must lie in (0,1)" );
    if ( cfg.max_iter < 1 )           invalid( "max_iter", "must be positive" );
    if ( cfg.out_dir.empty() )        invalid( "out_dir", "must not be empty" );

    if ( cfg.dense_check )
    {
        // single layer n x n is the larger dense matrix
        const std::size_t  n = std::size_t( 8 ) << ( 2 * cfg.refinements.back() );

        if ( n * n > dense_entry_limit )
            throw error( errc::size_limit, "experiment config: dense_check needs n <= 2048, got refinement " +
                         std::to_string( cfg.refinements.back() ) );
    }// if
}

experiment_result
run_experiment ( const experiment_config &  cfg,
                 const progress_callback &  progress )
{
    validate( cfg );

    std::error_code  ec;

    fs::create_directories( cfg.out_dir, ec );

    if ( ! fs::is_directory( cfg.out_dir ) )
        throw error( errc::io_error, "cannot create output directory " + cfg.out_dir );

    experiment_result  res;

    for ( auto  v : { h2_variant::deduplicated, h2_variant::conventional } )
    {
        if ( v == h2_variant::deduplicated && cfg.variant == variant_selection::conventional ) continue;
        if ( v == h2_variant::conventional && cfg.variant == variant_selection::dedup ) continue;

        auto &  rows = v == h2_variant::deduplicated ? res.dedup : res.conventional;

        for ( auto  r : cfg.refinements )
            rows.push_back( run_refinement( cfg, r, v, progress ) );

        write_reports( cfg, rows, v );
    }// for

    if ( cfg.variant == variant_selection::both )
    {
        const fs::path  dir = cfg.out_dir;

        for ( std::string  op : { "slp", "dlp" } )
        {
            if ( ( op == "slp" && cfg.kernel == kernel_selection::dlp ) || ( op == "dlp" && cfg.kernel == kernel_selection::slp ) )
                continue;

            compare_reports( ( dir / ( "storage_" + op + "_dedup.csv" ) ).string(),
                             ( dir / ( "storage_" + op + "_conventional.csv" ) ).string(),
                             ( dir / ( "compare_" + op + ".csv" ) ).string() );
        }// for
    }// if

    return res;
}

void
compare_reports ( const std::string &  dedup_csv,
                  const std::string &  conventional_csv,
                  const std::string &  out_csv )
{
    const auto  a = read_csv( dedup_csv );
    const auto  b = read_csv( conventional_csv );

    auto  check_header = [] ( const auto & rows, const std::string & path ) {
        if ( rows.empty() || rows[0].size() != 8 || rows[0][0] != "n" || rows[0][4] != "leaf_MB" || rows[0][7] != "coupling_MB" )
            throw error( errc::format_error, path + ": not a storage report" );
    };

    check_header( a, dedup_csv );
    check_header( b, conventional_csv );

    if ( a.size() != b.size() )
        throw error( errc::dimension_mismatch, "compare_reports: different number of rows" );

    std::ofstream  out( out_csv );

    if ( ! out )
        throw error( errc::io_error, "cannot write " + out_csv );

    out << "n,leaf_ratio,transfer_ratio,nearfield_ratio,coupling_ratio\n";

    for ( std::size_t  i = 1; i < a.size(); ++i )
    {
        if ( a[i].size() != 8 || b[i].size() != 8 )
            throw error( errc::format_error, "compare_reports: malformed row " + std::to_string( i ) );

        if ( a[i][0] != b[i][0] )
            throw error( errc::dimension_mismatch, "compare_reports: row " + std::to_string( i ) + " has n=" + a[i][0] +
                         " and n=" + b[i][0] );

        out << a[i][0];

        for ( int  c = 4; c < 8; ++c )
        {
            const double  d = to_double( a[i][c], dedup_csv );
            const double  e = to_double( b[i][c], conventional_csv );

            // equal storage counts as ratio 1, also when both are empty
            if      ( e == d ) out << ",1.0000";
            else if ( d > 0 )  out << ',' << format( "%.4f", e / d );
            else               out << ",nan";
        }// for

        out << '\n';
    }// for
}

}// namespace tih2
