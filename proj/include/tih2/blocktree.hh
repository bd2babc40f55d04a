#ifndef TIH2_BLOCKTREE_HH
#define TIH2_BLOCKTREE_HH
//
// Project     : tih2
// Module      : blocktree
// Description : admissibility condition and block cluster trees
//

#include <iosfwd>
#include <memory>
#include <vector>

#include <tih2/clustering.hh>

namespace tih2 {

enum class block_status
{
    admissible,
    inadmissible,
    subdivided
};

struct block
{
    index_t       row = 0;
    index_t       col = 0;
    int           level = 0;
    block_status  status = block_status::inadmissible;
    index_t       first_son = no_index;     // sons are stored consecutively
    int           son_count = 0;
};

//
// max(diam B_t, diam C_s) <= eta dist(B_t, C_s)
//
// For level-uniform trees the diameters come from the level support boxes
// and the distance is evaluated as dist(B, C - delta (.) (p_t - p_s)), so the
// result depends on the displacement difference only.
//
// max{diam(B), diam(C)} <= eta dist(B, C)
bool  admissible_boxes ( const axis_box & b, const axis_box & c, double eta );

bool  admissible ( const cluster_tree & rows, index_t t,
                   const cluster_tree & cols, index_t s,
                   double               eta );

class block_tree
{
public:
    block_tree () = default;
    block_tree ( std::shared_ptr< const cluster_tree >  rows,
                 std::shared_ptr< const cluster_tree >  cols,
                 double                                 eta );

    const cluster_tree &  rows () const { return *_rows; }
    const cluster_tree &  cols () const { return *_cols; }

    std::shared_ptr< const cluster_tree >  rows_ptr () const { return _rows; }
    std::shared_ptr< const cluster_tree >  cols_ptr () const { return _cols; }

    double                eta  () const { return _eta; }

    const std::vector< block > &    blocks () const { return _blocks; }
    const block &                   node ( std::size_t b ) const { return _blocks[b]; }

    // indices into blocks()
    const std::vector< index_t > &  admissible_leaves   () const { return _admissible; }
    const std::vector< index_t > &  inadmissible_leaves () const { return _inadmissible; }

    // one CSV row per leaf: level, p_t, p_s, admissible flag
    void  write_csv ( std::ostream & out ) const;

private:
    std::shared_ptr< const cluster_tree >  _rows;
    std::shared_ptr< const cluster_tree >  _cols;
    double                                 _eta = 2;
    std::vector< block >                   _blocks;
    std::vector< index_t >                 _admissible;
    std::vector< index_t >                 _inadmissible;
};

//
// root (root,root); inadmissible blocks are subdivided into sons(t) x sons(s)
// unless both are leaves (a leaf on one side only keeps that cluster)
//
block_tree  build_block_tree ( std::shared_ptr< const cluster_tree >  rows,
                               std::shared_ptr< const cluster_tree >  cols,
                               double                                 eta );

struct sparsity_report
{
    // per level: max over t of |{s : (t,s) in tree}| and the transpose
    std::vector< std::size_t >  row_max;
    std::vector< std::size_t >  col_max;
    // per level: max over leaves t of |{s : (t,s) inadmissible leaf}|
    std::vector< std::size_t >  row_inadmissible_max;

    std::size_t  max_row () const;
    std::size_t  max_col () const;
};

sparsity_report  compute_sparsity ( const block_tree & tree );

}// namespace tih2

#endif // TIH2_BLOCKTREE_HH
