#ifndef TIH2_H2MATRIX_HH
#define TIH2_H2MATRIX_HH
//
// Project     : tih2
// Module      : h2core
// Description : H2-matrices with translation-keyed transfer and coupling
//               matrices, nearfield blocks, matvec and storage accounting
//

#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include <tih2/blocktree.hh>
#include <tih2/interpolation.hh>
#include <tih2/quadkernel.hh>

namespace tih2 {

enum class h2_variant
{
    deduplicated,   // level-uniform trees, matrices shared per translation key
    conventional    // per-cluster boxes, every matrix stored individually
};

// son level and son parity on the split axis of the father
struct transfer_key
{
    int  level  = 0;
    int  parity = 0;

    auto operator <=> ( const transfer_key & ) const = default;
};

// level and p_t - p_s
struct coupling_key
{
    int    level = 0;
    ivec3  diff{ 0, 0, 0 };

    auto operator <=> ( const coupling_key & ) const = default;
};

struct storage_report
{
    std::size_t  rows  = 0;
    std::size_t  cols  = 0;
    int          theta = 0;
    std::size_t  k     = 0;
    int          lmax  = 0;

    std::size_t  leaf_units      = 0;
    std::size_t  transfer_units  = 0;
    std::size_t  nearfield_units = 0;
    std::size_t  coupling_units  = 0;

    // distinct stored matrices per level
    std::vector< std::size_t >  row_transfers;
    std::vector< std::size_t >  col_transfers;
    std::vector< std::size_t >  couplings;

    static double  megabytes ( std::size_t units ) { return double( units ) * 8.0 / double( 1 << 20 ); }
};

// columns: n, theta, k, lmax, leaf_MB, transfer_MB, nearfield_MB, coupling_MB
void  write_storage_header ( std::ostream & out );
void  write_storage_row    ( std::ostream & out, const storage_report & r );

struct h2_options
{
    int                 theta = 4;
    quadrature_options  quad;
    // add factor * M (constant x linear mass) to the nearfield blocks
    double              mass_factor = 0;
};

// E(mu,nu) = L_{father,nu}( xi_{son,mu} + shift )
dense_matrix  transfer_matrix ( const tensor_grid & father, const tensor_grid & son, const vec3 & shift );

// S(nu,mu) = g( xi_{row,nu}, xi_{col,mu} + shift )
dense_matrix  coupling_matrix ( const tensor_grid & row, const tensor_grid & col, const vec3 & shift );

// shift of a son grid relative to its father for dedup transfer matrices
vec3  son_shift ( const cluster_tree & tree, index_t son );

class h2matrix
{
public:
    h2matrix () = default;

    std::size_t  rows  () const { return _rows.size(); }
    std::size_t  cols  () const { return _cols.size(); }
    int          theta () const { return _theta; }
    std::size_t  rank  () const { return _k; }

    kernel_kind  kernel  () const { return _kernel; }
    h2_variant   variant () const { return _variant; }

    const basis_family &  row_basis () const { return _rows; }
    const basis_family &  col_basis () const { return _cols; }
    const block_tree &    blocks    () const { return *_blocks; }

    std::shared_ptr< const block_tree >  blocks_ptr () const { return _blocks; }

    // y = A x
    void                   matvec ( std::span< const double > x, std::span< double > y ) const;
    std::vector< double >  apply  ( std::span< const double > x ) const;

    storage_report  storage () const;

    //
    // stored data
    //

    const dense_matrix &  row_leaf ( index_t t ) const { return _row_leaf[t]; }
    const dense_matrix &  col_leaf ( index_t s ) const { return _col_leaf[s]; }

    // store ids, -1 for roots
    int  row_transfer_id ( index_t t ) const { return _row_transfer_of[t]; }
    int  col_transfer_id ( index_t s ) const { return _col_transfer_of[s]; }

    const dense_matrix &  row_transfer ( index_t t ) const { return _row_transfers.at( _row_transfer_of[t] ); }
    const dense_matrix &  col_transfer ( index_t s ) const { return _col_transfers.at( _col_transfer_of[s] ); }

    std::size_t  row_transfer_count () const { return _row_transfers.size(); }
    std::size_t  col_transfer_count () const { return _col_transfers.size(); }

    // by position in blocks().admissible_leaves()
    int                   coupling_id ( std::size_t leaf ) const { return _coupling_of[leaf]; }
    const dense_matrix &  coupling    ( std::size_t leaf ) const { return _couplings.at( _coupling_of[leaf] ); }
    std::size_t           coupling_count () const { return _couplings.size(); }

    // by position in blocks().inadmissible_leaves()
    const row_major_matrix &  nearfield ( std::size_t leaf ) const { return _nearfield[leaf]; }

    // reference grids per level (deduplicated variant)
    const tensor_grid &  row_grid ( int level ) const { return _row_grids.at( level ); }
    const tensor_grid &  col_grid ( int level ) const { return _col_grids.at( level ); }

    moment_variant  column_moments () const { return _col_variant; }

private:
    friend h2matrix  assemble_common ( kernel_kind, const basis_family &, const basis_family &,
                                       std::shared_ptr< const block_tree >, const h2_options &, h2_variant );

    kernel_kind     _kernel  = kernel_kind::single_layer;
    h2_variant      _variant = h2_variant::deduplicated;
    moment_variant  _col_variant = moment_variant::value;
    int             _theta = 0;
    std::size_t     _k     = 0;

    basis_family                         _rows;
    basis_family                         _cols;
    std::shared_ptr< const block_tree >  _blocks;

    std::vector< tensor_grid >  _row_grids;
    std::vector< tensor_grid >  _col_grids;

    std::vector< dense_matrix >  _row_leaf;
    std::vector< dense_matrix >  _col_leaf;

    std::vector< dense_matrix >  _row_transfers;
    std::vector< dense_matrix >  _col_transfers;
    std::vector< int >           _row_transfers_level;
    std::vector< int >           _col_transfers_level;
    std::vector< int >           _row_transfer_of;
    std::vector< int >           _col_transfer_of;

    std::vector< dense_matrix >           _couplings;
    std::vector< int >                    _couplings_level;
    std::vector< int >                    _coupling_of;
    std::vector< std::vector< index_t > > _coupling_users;    // admissible leaf positions per store id

    std::vector< row_major_matrix >  _nearfield;
};

//
// deduplicated H2-matrix on level-uniform trees; kernel double_layer moves
// the normal derivative into the column leaf matrices
//
h2matrix  assemble_h2 ( kernel_kind                          kernel,
                        const basis_family &                 rows,
                        const basis_family &                 cols,
                        std::shared_ptr< const block_tree >  blocks,
                        const h2_options &                   opts );

//
// conventional baseline: bounding boxes of the cluster's own points, split
// at the midpoint of the longest edge while a cluster holds at least 2k points
//
cluster_tree  build_conventional_tree ( const basis_family & basis, std::size_t k );

h2matrix  assemble_h2_conventional ( kernel_kind                          kernel,
                                     const basis_family &                 rows,
                                     const basis_family &                 cols,
                                     std::shared_ptr< const block_tree >  blocks,
                                     const h2_options &                   opts );

//
// bases, cluster trees and block tree for one operator on a mesh: single
// layer uses constants on both sides, double layer constants x linears;
// level-uniform trees use choose_lmax with C_rk, conventional trees the
// 2k stopping rule; lmax >= 0 overrides choose_lmax for tiny meshes
//
struct operator_setup
{
    kernel_kind                          kernel = kernel_kind::single_layer;
    h2_variant                           variant = h2_variant::deduplicated;
    int                                  theta = 0;
    int                                  lmax  = 0;
    basis_family                         rows;
    basis_family                         cols;
    std::shared_ptr< const block_tree >  blocks;
};

operator_setup  make_operator_setup ( std::shared_ptr< const surface_mesh >  mesh,
                                      kernel_kind                            kernel,
                                      int                                    theta,
                                      double                                 eta,
                                      double                                 crk,
                                      h2_variant                             variant,
                                      int                                    lmax = -1 );

h2matrix  assemble ( const operator_setup & setup, const h2_options & opts );

// storage counts from the tree structure alone (no assembly)
storage_report  count_storage ( const block_tree & blocks, int theta, h2_variant variant );

}// namespace tih2

#endif // TIH2_H2MATRIX_HH
