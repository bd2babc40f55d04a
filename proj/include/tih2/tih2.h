#ifndef TIH2_TIH2_H
#define TIH2_TIH2_H
/*
 * Project     : tih2
 * Module      : c_api
 * Description : C interface: opaque handles, status codes, experiment driver
 */

#include <stddef.h>
#include <stdint.h>

#if defined( TIH2_BUILD_SHARED )
#  define TIH2_API __attribute__(( visibility( "default" ) ))
#else
#  define TIH2_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum
{
    TIH2_OK                  = 0,
    TIH2_INVALID_ARGUMENT    = 1,
    TIH2_OUT_OF_RANGE        = 2,
    TIH2_DIMENSION_MISMATCH  = 3,
    TIH2_SIZE_LIMIT          = 4,
    TIH2_NOT_CONVERGED       = 5,
    TIH2_IO_ERROR            = 6,
    TIH2_FORMAT_ERROR        = 7,
    TIH2_OUT_OF_MEMORY       = 8,
    TIH2_INTERNAL_ERROR      = 99
} tih2_status;

typedef enum { TIH2_SINGLE_LAYER = 0, TIH2_DOUBLE_LAYER = 1 } tih2_kernel;
typedef enum { TIH2_DEDUP = 0, TIH2_CONVENTIONAL = 1 } tih2_variant;

/* message of the last failed call on this thread ("" if none) */
TIH2_API const char *  tih2_last_error ( void );
TIH2_API const char *  tih2_status_name ( tih2_status s );
TIH2_API const char *  tih2_version ( void );

/*
 * meshes
 */

typedef struct tih2_mesh_s  tih2_mesh;

/* octahedron refined r times and projected to the unit sphere: 8*4^r triangles */
TIH2_API tih2_status  tih2_mesh_sphere ( int refinement, tih2_mesh ** out );
TIH2_API tih2_status  tih2_mesh_read   ( const char * path, tih2_mesh ** out );
TIH2_API tih2_status  tih2_mesh_write  ( const tih2_mesh * mesh, const char * path );
TIH2_API tih2_status  tih2_mesh_counts ( const tih2_mesh * mesh, size_t * vertices, size_t * triangles );
TIH2_API void         tih2_mesh_free   ( tih2_mesh * mesh );

/*
 * H2 operators: single layer on constants x constants, double layer on
 * constants x linears; mass_factor * M is folded into the nearfield
 */

typedef struct tih2_operator_s  tih2_operator;

typedef struct
{
    size_t  rows, cols;
    int     theta;
    size_t  k;
    int     lmax;
    size_t  leaf_units, transfer_units, nearfield_units, coupling_units;
} tih2_storage;

TIH2_API tih2_status  tih2_operator_create  ( const tih2_mesh * mesh, tih2_kernel kernel, tih2_variant variant,
                                              int theta, double eta, double crk, double mass_factor,
                                              tih2_operator ** out );
TIH2_API tih2_status  tih2_operator_size    ( const tih2_operator * op, size_t * rows, size_t * cols );
TIH2_API tih2_status  tih2_operator_matvec  ( const tih2_operator * op, const double * x, size_t nx, double * y, size_t ny );
TIH2_API tih2_status  tih2_operator_storage ( const tih2_operator * op, tih2_storage * out );

/* block tree leaves as CSV, cluster tree (0 = rows, 1 = columns) as indented text */
TIH2_API tih2_status  tih2_operator_write_blocks ( const tih2_operator * op, const char * path );
TIH2_API tih2_status  tih2_operator_write_tree   ( const tih2_operator * op, int column_side, const char * path );
TIH2_API void         tih2_operator_free         ( tih2_operator * op );

/*
 * experiments
 */

typedef struct tih2_config_s  tih2_config;

TIH2_API tih2_status  tih2_config_create ( tih2_config ** out );
TIH2_API void         tih2_config_free   ( tih2_config * cfg );

TIH2_API tih2_status  tih2_config_set_refinements     ( tih2_config * cfg, const int * levels, size_t count );
/* theta = theta_base + ( r - base_refinement ) */
TIH2_API tih2_status  tih2_config_set_theta_base      ( tih2_config * cfg, int theta_base, int base_refinement );
TIH2_API tih2_status  tih2_config_set_eta             ( tih2_config * cfg, double eta );
TIH2_API tih2_status  tih2_config_set_crk             ( tih2_config * cfg, double crk );
/* "slp", "dlp" or "both" */
TIH2_API tih2_status  tih2_config_set_kernel          ( tih2_config * cfg, const char * kernel );
/* "dedup", "conventional" or "both" */
TIH2_API tih2_status  tih2_config_set_variant         ( tih2_config * cfg, const char * variant );
TIH2_API tih2_status  tih2_config_set_rel_tol         ( tih2_config * cfg, double rel_tol );
TIH2_API tih2_status  tih2_config_set_max_iter        ( tih2_config * cfg, int max_iter );
TIH2_API tih2_status  tih2_config_set_gram_projection ( tih2_config * cfg, int enable );
TIH2_API tih2_status  tih2_config_set_out_dir         ( tih2_config * cfg, const char * dir );
TIH2_API tih2_status  tih2_config_set_seed            ( tih2_config * cfg, uint64_t seed );
TIH2_API tih2_status  tih2_config_set_dense_check     ( tih2_config * cfg, int enable );
TIH2_API tih2_status  tih2_config_validate            ( const tih2_config * cfg );

typedef void ( * tih2_progress_fn ) ( const char * message, void * user );

/* writes the CSV reports into the configured output directory */
TIH2_API tih2_status  tih2_run_experiment ( const tih2_config * cfg, tih2_progress_fn progress, void * user );

TIH2_API tih2_status  tih2_compare_reports ( const char * dedup_csv, const char * conventional_csv, const char * out_csv );

#ifdef __cplusplus
}
#endif

#endif /* TIH2_TIH2_H */
