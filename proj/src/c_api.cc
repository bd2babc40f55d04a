//
// Project     : tih2
// Module      : c_api
// Description : C interface: opaque handles, status codes, experiment driver
//

#include <fstream>
#include <new>
#include <string>

#include <tih2/error.hh>
#include <tih2/experiment.hh>
#include <tih2/h2matrix.hh>
#include <tih2/tih2.h>

struct tih2_mesh_s
{
    std::shared_ptr< const tih2::surface_mesh >  mesh;
};

struct tih2_operator_s
{
    tih2::operator_setup  setup;
    tih2::h2matrix        matrix;
};

struct tih2_config_s
{
    tih2::experiment_config  cfg;
};

namespace {

thread_local std::string  last_error;

tih2_status
to_status ( tih2::errc c )
{
    switch ( c )
    {
        case tih2::errc::invalid_argument   : return TIH2_INVALID_ARGUMENT;
        case tih2::errc::out_of_range       : return TIH2_OUT_OF_RANGE;
        case tih2::errc::dimension_mismatch : return TIH2_DIMENSION_MISMATCH;
        case tih2::errc::size_limit         : return TIH2_SIZE_LIMIT;
        case tih2::errc::not_converged      : return TIH2_NOT_CONVERGED;
        case tih2::errc::io_error           : return TIH2_IO_ERROR;
        case tih2::errc::format_error       : return TIH2_FORMAT_ERROR;
    }// switch

    return TIH2_INTERNAL_ERROR;
}

// run f, translating exceptions into status codes
template < typename F >
tih2_status
guarded ( F && f )
{
    try
    {
        f();
        last_error.clear();
        return TIH2_OK;
    }// try
    catch ( const tih2::error &  e )
    {
        last_error = e.what();
        return to_status( e.code() );
    }// catch
    catch ( const std::bad_alloc & )
    {
        last_error = "out of memory";
        return TIH2_OUT_OF_MEMORY;
    }// catch
    catch ( const std::exception &  e )
    {
        last_error = e.what();
        return TIH2_INTERNAL_ERROR;
    }// catch
    catch ( ... )
    {
        last_error = "unknown exception";
        return TIH2_INTERNAL_ERROR;
    }// catch
}

void
require ( const void * p, const char * what )
{
    if ( p == nullptr )
        throw tih2::error( tih2::errc::invalid_argument, std::string( what ) + " is null" );
}

}// namespace anonymous

extern "C" {

const char *
tih2_last_error ( void )
{
    return last_error.c_str();
}

const char *
tih2_status_name ( tih2_status s )
{
    switch ( s )
    {
        case TIH2_OK                 : return "ok";
        case TIH2_INVALID_ARGUMENT   : return "invalid argument";
        case TIH2_OUT_OF_RANGE       : return "out of range";
        case TIH2_DIMENSION_MISMATCH : return "dimension mismatch";
        case TIH2_SIZE_LIMIT         : return "size limit";
        case TIH2_NOT_CONVERGED      : return "not converged";
        case TIH2_IO_ERROR           : return "i/o error";
        case TIH2_FORMAT_ERROR       : return "format error";
        case TIH2_OUT_OF_MEMORY      : return "out of memory";
        case TIH2_INTERNAL_ERROR     : return "internal error";
    }// switch

    return "unknown status";
}

const char *
tih2_version ( void )
{
    return "0.1.0";
}

//
// meshes
//

tih2_status
tih2_mesh_sphere ( int refinement, tih2_mesh ** out )
{
    return guarded( [&] {
        require( out, "out" );
        *out = nullptr;

        if ( refinement < 0 || refinement > 10 )
            throw tih2::error( tih2::errc::out_of_range, "tih2_mesh_sphere: refinement must lie in [0,10]" );

        *out = new tih2_mesh{ std::make_shared< const tih2::surface_mesh >( tih2::make_sphere_mesh( refinement ) ) };
    } );
}

tih2_status
tih2_mesh_read ( const char * path, tih2_mesh ** out )
{
    return guarded( [&] {
        require( path, "path" );
        require( out, "out" );
        *out = nullptr;

        std::ifstream  in( path );

        if ( ! in )
            throw tih2::error( tih2::errc::io_error, std::string( "cannot read " ) + path );

        *out = new tih2_mesh{ std::make_shared< const tih2::surface_mesh >( tih2::read_mesh( in ) ) };
    } );
}

tih2_status
tih2_mesh_write ( const tih2_mesh * mesh, const char * path )
{
    return guarded( [&] {
        require( mesh, "mesh" );
        require( path, "path" );

        std::ofstream  out( path );

        if ( ! out )
            throw tih2::error( tih2::errc::io_error, std::string( "cannot write " ) + path );

        tih2::write_mesh( out, *mesh->mesh );
    } );
}

tih2_status
tih2_mesh_counts ( const tih2_mesh * mesh, size_t * vertices, size_t * triangles )
{
    return guarded( [&] {
        require( mesh, "mesh" );

        if ( vertices )  *vertices  = mesh->mesh->vertex_count();
        if ( triangles ) *triangles = mesh->mesh->triangle_count();
    } );
}

void
tih2_mesh_free ( tih2_mesh * mesh )
{
    delete mesh;
}

//
// operators
//

tih2_status
tih2_operator_create ( const tih2_mesh * mesh, tih2_kernel kernel, tih2_variant variant,
                       int theta, double eta, double crk, double mass_factor,
                       tih2_operator ** out )
{
    return guarded( [&] {
        require( mesh, "mesh" );
        require( out, "out" );
        *out = nullptr;

        if ( kernel != TIH2_SINGLE_LAYER && kernel != TIH2_DOUBLE_LAYER )
            throw tih2::error( tih2::errc::invalid_argument, "tih2_operator_create: unknown kernel" );

        if ( variant != TIH2_DEDUP && variant != TIH2_CONVENTIONAL )
            throw tih2::error( tih2::errc::invalid_argument, "tih2_operator_create: unknown variant" );

        if ( ! ( eta > 0 ) || ! ( crk > 0 ) )
            throw tih2::error( tih2::errc::invalid_argument, "tih2_operator_create: eta and crk must be positive" );

        auto  op = std::make_unique< tih2_operator >();

        op->setup = tih2::make_operator_setup( mesh->mesh,
                                               kernel == TIH2_SINGLE_LAYER ? tih2::kernel_kind::single_layer
                                                                           : tih2::kernel_kind::double_layer,
                                               theta, eta, crk,
                                               variant == TIH2_DEDUP ? tih2::h2_variant::deduplicated
                                                                     : tih2::h2_variant::conventional );

        tih2::h2_options  opts;

        opts.mass_factor = mass_factor;
        op->matrix = tih2::assemble( op->setup, opts );
        *out = op.release();
    } );
}

tih2_status
tih2_operator_size ( const tih2_operator * op, size_t * rows, size_t * cols )
{
    return guarded( [&] {
        require( op, "operator" );

        if ( rows ) *rows = op->matrix.rows();
        if ( cols ) *cols = op->matrix.cols();
    } );
}

tih2_status
tih2_operator_matvec ( const tih2_operator * op, const double * x, size_t nx, double * y, size_t ny )
{
    return guarded( [&] {
        require( op, "operator" );
        require( x, "x" );
        require( y, "y" );
        op->matrix.matvec( { x, nx }, { y, ny } );
    } );
}

tih2_status
tih2_operator_storage ( const tih2_operator * op, tih2_storage * out )
{
    return guarded( [&] {
        require( op, "operator" );
        require( out, "out" );

        const auto  r = op->matrix.storage();

        *out = tih2_storage{ r.rows, r.cols, r.theta, r.k, r.lmax,
                             r.leaf_units, r.transfer_units, r.nearfield_units, r.coupling_units };
    } );
}

tih2_status
tih2_operator_write_blocks ( const tih2_operator * op, const char * path )
{
    return guarded( [&] {
        require( op, "operator" );
        require( path, "path" );

        std::ofstream  out( path );

        if ( ! out )
            throw tih2::error( tih2::errc::io_error, std::string( "cannot write " ) + path );

        op->setup.blocks->write_csv( out );
    } );
}

tih2_status
tih2_operator_write_tree ( const tih2_operator * op, int column_side, const char * path )
{
    return guarded( [&] {
        require( op, "operator" );
        require( path, "path" );

        std::ofstream  out( path );

        if ( ! out )
            throw tih2::error( tih2::errc::io_error, std::string( "cannot write " ) + path );

        ( column_side ? op->setup.blocks->cols() : op->setup.blocks->rows() ).dump( out );
    } );
}

void
tih2_operator_free ( tih2_operator * op )
{
    delete op;
}

//
// experiments
//

tih2_status
tih2_config_create ( tih2_config ** out )
{
    return guarded( [&] {
        require( out, "out" );
        *out = new tih2_config;
    } );
}

void
tih2_config_free ( tih2_config * cfg )
{
    delete cfg;
}

tih2_status
tih2_config_set_refinements ( tih2_config * cfg, const int * levels, size_t count )
{
    return guarded( [&] {
        require( cfg, "config" );

        if ( count > 0 )
            require( levels, "levels" );

        cfg->cfg.refinements.assign( levels, levels + count );
    } );
}

tih2_status
tih2_config_set_theta_base ( tih2_config * cfg, int theta_base, int base_refinement )
{
    return guarded( [&] {
        require( cfg, "config" );
        cfg->cfg.theta_base      = theta_base;
        cfg->cfg.base_refinement = base_refinement;
    } );
}

tih2_status
tih2_config_set_eta ( tih2_config * cfg, double eta )
{
    return guarded( [&] { require( cfg, "config" ); cfg->cfg.eta = eta; } );
}

tih2_status
tih2_config_set_crk ( tih2_config * cfg, double crk )
{
    return guarded( [&] { require( cfg, "config" ); cfg->cfg.crk = crk; } );
}

tih2_status
tih2_config_set_kernel ( tih2_config * cfg, const char * kernel )
{
    return guarded( [&] {
        require( cfg, "config" );
        require( kernel, "kernel" );

        const std::string  k = kernel;

        if      ( k == "slp" )  cfg->cfg.kernel = tih2::kernel_selection::slp;
        else if ( k == "dlp" )  cfg->cfg.kernel = tih2::kernel_selection::dlp;
        else if ( k == "both" ) cfg->cfg.kernel = tih2::kernel_selection::both;
        else
            throw tih2::error( tih2::errc::invalid_argument, "experiment config: kernel must be slp, dlp or both, got '" + k + "'" );
    } );
}

tih2_status
tih2_config_set_variant ( tih2_config * cfg, const char * variant )
{
    return guarded( [&] {
        require( cfg, "config" );
        require( variant, "variant" );

        const std::string  v = variant;

        if      ( v == "dedup" )        cfg->cfg.variant = tih2::variant_selection::dedup;
        else if ( v == "conventional" ) cfg->cfg.variant = tih2::variant_selection::conventional;
        else if ( v == "both" )         cfg->cfg.variant = tih2::variant_selection::both;
        else
            throw tih2::error( tih2::errc::invalid_argument,
                               "experiment config: variant must be dedup, conventional or both, got '" + v + "'" );
    } );
}

tih2_status
tih2_config_set_rel_tol ( tih2_config * cfg, double rel_tol )
{
    return guarded( [&] { require( cfg, "config" ); cfg->cfg.rel_tol = rel_tol; } );
}

tih2_status
tih2_config_set_max_iter ( tih2_config * cfg, int max_iter )
{
    return guarded( [&] { require( cfg, "config" ); cfg->cfg.max_iter = max_iter; } );
}

tih2_status
tih2_config_set_gram_projection ( tih2_config * cfg, int enable )
{
    return guarded( [&] { require( cfg, "config" ); cfg->cfg.gram_projection = enable != 0; } );
}

tih2_status
tih2_config_set_out_dir ( tih2_config * cfg, const char * dir )
{
    return guarded( [&] {
        require( cfg, "config" );
        require( dir, "dir" );
        cfg->cfg.out_dir = dir;
    } );
}

tih2_status
tih2_config_set_seed ( tih2_config * cfg, uint64_t seed )
{
    return guarded( [&] { require( cfg, "config" ); cfg->cfg.seed = seed; } );
}

tih2_status
tih2_config_set_dense_check ( tih2_config * cfg, int enable )
{
    return guarded( [&] { require( cfg, "config" ); cfg->cfg.dense_check = enable != 0; } );
}

tih2_status
tih2_config_validate ( const tih2_config * cfg )
{
    return guarded( [&] {
        require( cfg, "config" );
        tih2::validate( cfg->cfg );
    } );
}

tih2_status
tih2_run_experiment ( const tih2_config * cfg, tih2_progress_fn progress, void * user )
{
    return guarded( [&] {
        require( cfg, "config" );

        tih2::progress_callback  cb;

        if ( progress )
            cb = [=] ( const std::string & msg ) { progress( msg.c_str(), user ); };

        tih2::run_experiment( cfg->cfg, cb );
    } );
}

tih2_status
tih2_compare_reports ( const char * dedup_csv, const char * conventional_csv, const char * out_csv )
{
    return guarded( [&] {
        require( dedup_csv, "dedup_csv" );
        require( conventional_csv, "conventional_csv" );
        require( out_csv, "out_csv" );
        tih2::compare_reports( dedup_csv, conventional_csv, out_csv );
    } );
}

}// extern "C"
