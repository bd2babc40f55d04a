//
// Project     : tih2
// Module      : cli
// Description : command line driver on top of the C interface
//

#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <tih2/tih2.h>

namespace {

// print the last error and map status to an exit code
int
report ( tih2_status s, const char * what )
{
    if ( s == TIH2_OK )
        return 0;

    std::cerr << "tih2: " << what << ": " << tih2_status_name( s ) << ": " << tih2_last_error() << std::endl;

    return int( s );
}

void
print_progress ( const char * msg, void * )
{
    std::cout << msg << std::endl;
}

struct run_args
{
    std::vector< int >  refinements{ 3, 4, 5 };
    int                 theta_base      = 4;
    int                 base_refinement = 5;
    double              eta     = 2.0;
    double              crk     = 2.0;
    std::string         kernel  = "both";
    std::string         variant = "dedup";
    double              rel_tol  = 1e-6;
    int                 max_iter = 5000;
    bool                gram    = false;
    std::string         out_dir = ".";
    std::uint64_t       seed    = 1;
    bool                dense   = false;
    bool                quiet   = false;
};

int
cmd_run ( const run_args & a )
{
    tih2_config *  cfg = nullptr;
    int            rc  = report( tih2_config_create( &cfg ), "config" );

    // stop at the first failing step
    const std::vector< std::pair< const char *, std::function< tih2_status () > > >  steps{
        { "--refinements",    [&] { return tih2_config_set_refinements( cfg, a.refinements.data(), a.refinements.size() ); } },
        { "--theta-base",     [&] { return tih2_config_set_theta_base( cfg, a.theta_base, a.base_refinement ); } },
        { "--eta",            [&] { return tih2_config_set_eta( cfg, a.eta ); } },
        { "--crk",            [&] { return tih2_config_set_crk( cfg, a.crk ); } },
        { "--kernel",         [&] { return tih2_config_set_kernel( cfg, a.kernel.c_str() ); } },
        { "--variant",        [&] { return tih2_config_set_variant( cfg, a.variant.c_str() ); } },
        { "--rel-tol",        [&] { return tih2_config_set_rel_tol( cfg, a.rel_tol ); } },
        { "--max-iter",       [&] { return tih2_config_set_max_iter( cfg, a.max_iter ); } },
        { "--gram-projection",[&] { return tih2_config_set_gram_projection( cfg, a.gram ); } },
        { "--out-dir",        [&] { return tih2_config_set_out_dir( cfg, a.out_dir.c_str() ); } },
        { "--seed",           [&] { return tih2_config_set_seed( cfg, a.seed ); } },
        { "--dense-check",    [&] { return tih2_config_set_dense_check( cfg, a.dense ); } },
        { "invalid configuration", [&] { return tih2_config_validate( cfg ); } },
        { "run",              [&] { return tih2_run_experiment( cfg, a.quiet ? nullptr : print_progress, nullptr ); } },
    };

    for ( const auto &  [ what, f ] : steps )
    {
        if ( rc != 0 )
            break;

        rc = report( f(), what );
    }// for

    tih2_config_free( cfg );

    return rc;
}

struct inspect_args
{
    int          refinement = 3;
    int          theta      = 2;
    double       eta        = 2.0;
    double       crk        = 2.0;
    std::string  kernel     = "slp";
    std::string  variant    = "dedup";
    std::string  blocks_csv;
    std::string  tree_txt;
};

int
cmd_inspect ( const inspect_args & a )
{
    tih2_mesh *      mesh = nullptr;
    tih2_operator *  op   = nullptr;
    int              rc   = report( tih2_mesh_sphere( a.refinement, &mesh ), "mesh" );

    if ( rc == 0 )
        rc = report( tih2_operator_create( mesh, a.kernel == "dlp" ? TIH2_DOUBLE_LAYER : TIH2_SINGLE_LAYER,
                                           a.variant == "conventional" ? TIH2_CONVENTIONAL : TIH2_DEDUP,
                                           a.theta, a.eta, a.crk, 0.0, &op ), "operator" );

    tih2_storage  st{};

    if ( rc == 0 ) rc = report( tih2_operator_storage( op, &st ), "storage" );

    if ( rc == 0 )
    {
        const double  mb = 8.0 / double( 1 << 20 );

        std::printf( "n=%zu x %zu theta=%d k=%zu lmax=%d\n", st.rows, st.cols, st.theta, st.k, st.lmax );
        std::printf( "leaf %.4f MB, transfer %.4f MB, nearfield %.4f MB, coupling %.4f MB\n",
                     double( st.leaf_units ) * mb, double( st.transfer_units ) * mb,
                     double( st.nearfield_units ) * mb, double( st.coupling_units ) * mb );
    }// if

    if ( rc == 0 && ! a.blocks_csv.empty() ) rc = report( tih2_operator_write_blocks( op, a.blocks_csv.c_str() ), "blocks" );
    if ( rc == 0 && ! a.tree_txt.empty() )   rc = report( tih2_operator_write_tree( op, 0, a.tree_txt.c_str() ), "tree" );

    tih2_operator_free( op );
    tih2_mesh_free( mesh );

    return rc;
}

}// namespace anonymous

int
main ( int argc, char ** argv )
{
    CLI::App  app{ "tih2: H2-matrix compression for Laplace boundary element experiments" };

    app.require_subcommand( 1 );

    //
    // run
    //

    run_args  ra;
    auto *    run = app.add_subcommand( "run", "refinement experiment with CSV reports" );

    run->add_option( "--refinements", ra.refinements, "octahedron refinement levels, n = 8*4^r" )->delimiter( ',' );
    run->add_option( "--theta-base", ra.theta_base, "interpolation degree at the base refinement" );
    run->add_option( "--base-refinement", ra.base_refinement, "refinement where theta equals theta-base" );
    run->add_option( "--eta", ra.eta, "admissibility parameter" );
    run->add_option( "--crk", ra.crk, "leaf size constant for the maximal level" );
    run->add_option( "--kernel", ra.kernel, "slp, dlp or both" );
    run->add_option( "--variant", ra.variant, "dedup, conventional or both" );
    run->add_option( "--rel-tol", ra.rel_tol, "relative CG tolerance" );
    run->add_option( "--max-iter", ra.max_iter, "CG iteration limit" );
    run->add_flag( "--gram-projection", ra.gram, "L2 projection of the Dirichlet data instead of nodal values" );
    run->add_option( "--out-dir", ra.out_dir, "directory for CSV reports" );
    run->add_option( "--seed", ra.seed, "seed for random test vectors" );
    run->add_flag( "--dense-check", ra.dense, "compare matvecs with dense matrices (n <= 2048)" );
    run->add_flag( "-q,--quiet", ra.quiet, "no progress output" );

    //
    // compare
    //

    std::string  dedup_csv, conv_csv, out_csv = "compare.csv";
    auto *       cmp = app.add_subcommand( "compare", "storage ratios conventional / dedup" );

    cmp->add_option( "dedup", dedup_csv, "storage CSV of the dedup variant" )->required();
    cmp->add_option( "conventional", conv_csv, "storage CSV of the conventional variant" )->required();
    cmp->add_option( "-o,--out", out_csv, "output CSV" );

    //
    // mesh
    //

    int          mesh_level = 3;
    std::string  mesh_out   = "sphere.mesh";
    auto *       msh = app.add_subcommand( "mesh", "write a sphere mesh" );

    msh->add_option( "--refinement", mesh_level, "octahedron refinement level" );
    msh->add_option( "-o,--out", mesh_out, "output file" );

    //
    // inspect
    //

    inspect_args  ia;
    auto *        ins = app.add_subcommand( "inspect", "build one operator and print its storage" );

    ins->add_option( "--refinement", ia.refinement, "octahedron refinement level" );
    ins->add_option( "--theta", ia.theta, "interpolation degree" );
    ins->add_option( "--eta", ia.eta, "admissibility parameter" );
    ins->add_option( "--crk", ia.crk, "leaf size constant for the maximal level" );
    ins->add_option( "--kernel", ia.kernel, "slp or dlp" )->check( CLI::IsMember( { "slp", "dlp" } ) );
    ins->add_option( "--variant", ia.variant, "dedup or conventional" )->check( CLI::IsMember( { "dedup", "conventional" } ) );
    ins->add_option( "--blocks", ia.blocks_csv, "write block tree leaves as CSV" );
    ins->add_option( "--tree", ia.tree_txt, "write the row cluster tree" );

    CLI11_PARSE( app, argc, argv );

    if ( run->parsed() )
        return cmd_run( ra );

    if ( cmp->parsed() )
        return report( tih2_compare_reports( dedup_csv.c_str(), conv_csv.c_str(), out_csv.c_str() ), "compare" );

    if ( msh->parsed() )
    {
        tih2_mesh *  m  = nullptr;
        int          rc = report( tih2_mesh_sphere( mesh_level, &m ), "mesh" );

        if ( rc == 0 ) rc = report( tih2_mesh_write( m, mesh_out.c_str() ), "mesh" );

        tih2_mesh_free( m );

        return rc;
    }// if

    return cmd_inspect( ia );
}
