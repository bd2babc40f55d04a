/*
 * C interface test, compiled as C and linked against the shared library only
 */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include <tih2/tih2.h>

static int  failures = 0;

#define EXPECT( cond ) \
    do { if ( ! ( cond ) ) { fprintf( stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond ); ++failures; } } while ( 0 )

static int  progress_calls = 0;

static void
count_progress ( const char * msg, void * user )
{
    (void) msg;
    ++*(int *) user;
}

int
main ( void )
{
    tih2_mesh *      mesh = NULL;
    tih2_operator *  op   = NULL;
    size_t           nv = 0, nt = 0, rows = 0, cols = 0;

    EXPECT( tih2_mesh_sphere( 3, &mesh ) == TIH2_OK );
    EXPECT( tih2_mesh_counts( mesh, &nv, &nt ) == TIH2_OK );
    EXPECT( nv == 258 && nt == 512 );
    EXPECT( strcmp( tih2_last_error(), "" ) == 0 );

    /* errors come back as codes with a message */
    EXPECT( tih2_mesh_counts( NULL, &nv, &nt ) == TIH2_INVALID_ARGUMENT );
    EXPECT( strlen( tih2_last_error() ) > 0 );

    tih2_mesh *      tmp = NULL;

    EXPECT( tih2_mesh_sphere( -1, &tmp ) == TIH2_OUT_OF_RANGE );
    EXPECT( tmp == NULL );
    EXPECT( tih2_mesh_read( "/nonexistent/mesh", &tmp ) == TIH2_IO_ERROR );

    /* double layer with folded mass: (K + 1/2 M) 1 is small */
    EXPECT( tih2_operator_create( mesh, TIH2_DOUBLE_LAYER, TIH2_DEDUP, 2, 2.0, 2.0, 0.5, &op ) == TIH2_OK );
    EXPECT( tih2_operator_size( op, &rows, &cols ) == TIH2_OK );
    EXPECT( rows == 512 && cols == 258 );

    double *  x = malloc( cols * sizeof( double ) );
    double *  y = malloc( rows * sizeof( double ) );
    double    s = 0;

    for ( size_t  i = 0; i < cols; ++i ) x[i] = 1.0;

    EXPECT( tih2_operator_matvec( op, x, cols, y, rows ) == TIH2_OK );

    for ( size_t  i = 0; i < rows; ++i ) s += y[i] * y[i];

    /* ||1/2 M 1|| is about 0.28 at n=512 */
    EXPECT( sqrt( s ) < 1e-3 );
    EXPECT( tih2_operator_matvec( op, x, cols - 1, y, rows ) == TIH2_DIMENSION_MISMATCH );

    tih2_storage  st;

    EXPECT( tih2_operator_storage( op, &st ) == TIH2_OK );
    EXPECT( st.k == 27 );
    EXPECT( st.leaf_units == 27 * ( 512 + 258 ) );
    EXPECT( st.lmax == 6 );
    EXPECT( tih2_operator_write_blocks( op, "/nonexistent/dir/blocks.csv" ) == TIH2_IO_ERROR );
    EXPECT( tih2_operator_create( mesh, TIH2_SINGLE_LAYER, TIH2_DEDUP, 2, 0.0, 2.0, 0.0, &op ) == TIH2_INVALID_ARGUMENT );

    tih2_operator_free( op );
    free( x );
    free( y );

    /* experiment configuration */
    tih2_config *  cfg = NULL;
    const int      levels[] = { 3 };

    EXPECT( tih2_config_create( &cfg ) == TIH2_OK );
    EXPECT( tih2_config_validate( cfg ) == TIH2_OK );
    EXPECT( tih2_config_set_kernel( cfg, "bogus" ) == TIH2_INVALID_ARGUMENT );
    EXPECT( strstr( tih2_last_error(), "kernel" ) != NULL );
    EXPECT( tih2_config_set_variant( cfg, "bogus" ) == TIH2_INVALID_ARGUMENT );
    EXPECT( tih2_config_set_eta( cfg, -1.0 ) == TIH2_OK );
    EXPECT( tih2_config_validate( cfg ) == TIH2_INVALID_ARGUMENT );
    EXPECT( strstr( tih2_last_error(), "eta" ) != NULL );
    EXPECT( tih2_config_set_eta( cfg, 2.0 ) == TIH2_OK );
    EXPECT( tih2_config_set_refinements( cfg, levels, 1 ) == TIH2_OK );
    EXPECT( tih2_config_set_theta_base( cfg, 3, 3 ) == TIH2_OK );
    EXPECT( tih2_config_set_kernel( cfg, "slp" ) == TIH2_OK );
    EXPECT( tih2_config_set_variant( cfg, "dedup" ) == TIH2_OK );
    EXPECT( tih2_config_set_out_dir( cfg, "capi_out" ) == TIH2_OK );
    EXPECT( tih2_config_set_seed( cfg, 7 ) == TIH2_OK );
    EXPECT( tih2_run_experiment( cfg, count_progress, &progress_calls ) == TIH2_OK );
    EXPECT( progress_calls > 0 );

    /* CG limit too small for the system */
    EXPECT( tih2_config_set_max_iter( cfg, 2 ) == TIH2_OK );
    EXPECT( tih2_run_experiment( cfg, NULL, NULL ) == TIH2_NOT_CONVERGED );
    EXPECT( strlen( tih2_last_error() ) > 0 );

    tih2_config_free( cfg );

    EXPECT( tih2_compare_reports( "capi_out/storage_slp_dedup.csv", "capi_out/storage_slp_dedup.csv", "capi_out/cmp.csv" ) == TIH2_OK );
    EXPECT( tih2_compare_reports( "capi_out/missing.csv", "capi_out/storage_slp_dedup.csv", "capi_out/cmp.csv" ) == TIH2_IO_ERROR );

    FILE *  f = fopen( "capi_out/cmp.csv", "r" );
    char    line[256] = { 0 };

    EXPECT( f != NULL );

    if ( f )
    {
        EXPECT( fgets( line, sizeof( line ), f ) != NULL );
        EXPECT( fgets( line, sizeof( line ), f ) != NULL );
        EXPECT( strcmp( line, "512,1.0000,1.0000,1.0000,1.0000\n" ) == 0 );
        fclose( f );
    }/* if */

    EXPECT( strcmp( tih2_status_name( TIH2_SIZE_LIMIT ), "size limit" ) == 0 );

    tih2_mesh_free( mesh );
    tih2_mesh_free( NULL );
    tih2_operator_free( NULL );

    if ( failures == 0 )
        printf( "C interface: all checks passed\n" );

    return failures == 0 ? 0 : 1;
}
