#ifndef TIH2_EXPERIMENT_HH
#define TIH2_EXPERIMENT_HH
//
// Project     : tih2
// Module      : cli
// Description : refinement experiments for the Dirichlet problem on the
//               unit sphere with CSV reports
//

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <tih2/h2matrix.hh>

namespace tih2 {

enum class kernel_selection  { slp, dlp, both };
enum class variant_selection { dedup, conventional, both };

struct experiment_config
{
    // octahedron refinement levels, n = 8 * 4^r triangles
    std::vector< int >  refinements{ 3, 4, 5 };

    // theta = theta_base + ( r - base_refinement )
    int                 theta_base      = 4;
    int                 base_refinement = 5;

    double              eta     = 2.0;
    double              crk     = 2.0;
    kernel_selection    kernel  = kernel_selection::both;
    variant_selection   variant = variant_selection::dedup;
    double              rel_tol  = 1e-6;
    int                 max_iter = 5000;
    bool                gram_projection = false;
    std::string         out_dir = ".";
    std::uint64_t       seed    = 1;

    // relative matvec error against dense matrices (n <= 2048 only)
    bool                dense_check = false;

    int  theta_for ( int refinement ) const { return theta_base + refinement - base_refinement; }
};

// throws errc::invalid_argument naming the offending field
void  validate ( const experiment_config & cfg );

struct experiment_row
{
    std::size_t     n     = 0;
    int             theta = 0;
    std::size_t     k     = 0;
    int             lmax_ii = 0;
    int             lmax_ij = 0;

    // only with a single layer solve
    bool            solved = false;
    double          eps_l2 = 0;
    int             cg_iterations = 0;
    std::vector< double >  residuals;

    bool            has_slp = false;
    bool            has_dlp = false;
    storage_report  slp_storage;
    storage_report  dlp_storage;

    // ||(K + 1/2 M) 1|| / ||1/2 M 1|| with the H2 approximation of K
    double          dlp_identity = -1;

    // dense comparison, max over random unit vectors (-1 if not run)
    double          slp_dense_error = -1;
    double          dlp_dense_error = -1;

    double          time_setup    = 0;
    double          time_assembly = 0;
    double          time_solve    = 0;
};

struct experiment_result
{
    std::vector< experiment_row >  dedup;
    std::vector< experiment_row >  conventional;
};

using progress_callback = std::function< void ( const std::string & ) >;

//
// per refinement and variant: single layer / double layer H2 matrices,
// (K + 1/2 M) b with b the Dirichlet coefficients, CG for the single layer
// system and relative L2 error of the Neumann trace
//
// files in out_dir (<v> = dedup | conventional):
//   parameters_<v>.csv   n,theta,k,lmax_II,lmax_IJ,eps_L2,cg_iterations
//   storage_slp_<v>.csv, storage_dlp_<v>.csv
//   timings_<v>.csv      wall times, not reproducible
//   accuracy_<v>.csv     with dense_check
//   compare_slp.csv, compare_dlp.csv with both variants
//
experiment_result  run_experiment ( const experiment_config &  cfg,
                                    const progress_callback &  progress = {} );

//
// conventional / dedup ratios per component from two storage CSVs with the
// same n column: n,leaf_ratio,transfer_ratio,nearfield_ratio,coupling_ratio
//
void  compare_reports ( const std::string & dedup_csv,
                        const std::string & conventional_csv,
                        const std::string & out_csv );

}// namespace tih2

#endif // TIH2_EXPERIMENT_HH
