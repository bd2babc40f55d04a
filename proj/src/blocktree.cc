//
// Project     : tih2
// Module      : blocktree
// Description : admissibility condition and block cluster trees
//

#include <algorithm>
#include <map>
#include <ostream>

#include <tih2/blocktree.hh>
#include <tih2/error.hh>

namespace tih2 {

bool
admissible_boxes ( const axis_box &  b,
                   const axis_box &  c,
                   double            eta )
{
    return std::max( b.diameter(), c.diameter() ) <= eta * distance( b, c );
}

bool
admissible ( const cluster_tree & rows, index_t t,
             const cluster_tree & cols, index_t s,
             double               eta )
{
    const auto &  ct = rows.node( t );
    const auto &  cs = cols.node( s );

    if ( rows.uniform() && cols.uniform() )
    {
        if ( ct.level != cs.level )
            throw error( errc::invalid_argument, "admissible: clusters on different levels" );

        const auto &  grow = rows.level( ct.level );
        const auto &  gcol = cols.level( cs.level );
        const double  diam = std::max( grow.support_box.diameter(), gcol.support_box.diameter() );
        ivec3         dp;

        for ( int  i = 0; i < dim; ++i )
            dp[i] = ct.displacement[i] - cs.displacement[i];

        const auto    shifted = gcol.support_box.translated( -1.0 * grow.offset( dp ) );

        return diam <= eta * distance( grow.support_box, shifted );
    }// if

    const double  diam = std::max( ct.support_box.diameter(), cs.support_box.diameter() );

    return diam <= eta * distance( ct.support_box, cs.support_box );
}

block_tree::block_tree ( std::shared_ptr< const cluster_tree >  rows,
                         std::shared_ptr< const cluster_tree >  cols,
                         double                                 eta )
        : _rows( std::move( rows ) )
        , _cols( std::move( cols ) )
        , _eta( eta )
{
    if ( ! _rows || ! _cols )
        throw error( errc::invalid_argument, "block_tree: missing cluster tree" );

    if ( ! ( eta > 0 ) )
        throw error( errc::invalid_argument, "block_tree: eta must be positive" );

    if ( _rows->uniform() != _cols->uniform() )
        throw error( errc::invalid_argument, "block_tree: cannot combine uniform and conventional cluster trees" );

    if ( _rows->uniform() )
    {
        const auto &  r0 = _rows->level( 0 ).reference_box;
        const auto &  c0 = _cols->level( 0 ).reference_box;

        if ( _rows->depth() != _cols->depth() || r0.lower != c0.lower || r0.upper != c0.upper )
            throw error( errc::invalid_argument, "block_tree: cluster trees differ in root box or maximal level" );
    }// if

    // breadth-first so that sons of a block are consecutive
    _blocks.push_back( { _rows->root(), _cols->root(), 0, block_status::inadmissible, no_index, 0 } );

    for ( std::size_t  b = 0; b < _blocks.size(); ++b )
    {
        const auto  t  = _blocks[b].row;
        const auto  s  = _blocks[b].col;
        const auto &  ct = _rows->node( t );
        const auto &  cs = _cols->node( s );

        if ( admissible( *_rows, t, *_cols, s, _eta ) )
        {
            _blocks[b].status = block_status::admissible;
            _admissible.push_back( index_t( b ) );
            continue;
        }// if

        if ( ct.is_leaf() && cs.is_leaf() )
        {
            _blocks[b].status = block_status::inadmissible;
            _inadmissible.push_back( index_t( b ) );
            continue;
        }// if

        _blocks[b].status    = block_status::subdivided;
        _blocks[b].first_son = index_t( _blocks.size() );

        const int  level = _blocks[b].level + 1;
        int        count = 0;

        auto  rsons = ct.is_leaf() ? std::vector< index_t >{ t } : std::vector< index_t >( ct.sons.begin(), ct.sons.begin() + ct.son_count );
        auto  csons = cs.is_leaf() ? std::vector< index_t >{ s } : std::vector< index_t >( cs.sons.begin(), cs.sons.begin() + cs.son_count );

        for ( auto  tt : rsons )
            for ( auto  ss : csons )
            {
                _blocks.push_back( { tt, ss, level, block_status::inadmissible, no_index, 0 } );
                ++count;
            }// for

        _blocks[b].son_count = count;
    }// for
}

void
block_tree::write_csv ( std::ostream & out ) const
{
    out << "level,pt0,pt1,pt2,ps0,ps1,ps2,admissible\n";

    for ( const auto &  b : _blocks )
    {
        if ( b.status == block_status::subdivided )
            continue;

        const auto &  pt = _rows->node( b.row ).displacement;
        const auto &  ps = _cols->node( b.col ).displacement;

        out << b.level << ','
            << pt[0] << ',' << pt[1] << ',' << pt[2] << ','
            << ps[0] << ',' << ps[1] << ',' << ps[2] << ','
            << ( b.status == block_status::admissible ? 1 : 0 ) << '\n';
    }// for
}

block_tree
build_block_tree ( std::shared_ptr< const cluster_tree >  rows,
                   std::shared_ptr< const cluster_tree >  cols,
                   double                                 eta )
{
    return block_tree( std::move( rows ), std::move( cols ), eta );
}

std::size_t
sparsity_report::max_row () const
{
    return row_max.empty() ? 0 : *std::max_element( row_max.begin(), row_max.end() );
}

std::size_t
sparsity_report::max_col () const
{
    return col_max.empty() ? 0 : *std::max_element( col_max.begin(), col_max.end() );
}

sparsity_report
compute_sparsity ( const block_tree & tree )
{
    std::map< index_t, std::size_t >  per_row, per_col, per_row_near;
    int                               depth = 0;

    for ( const auto &  b : tree.blocks() )
    {
        ++per_row[ b.row ];
        ++per_col[ b.col ];

        if ( b.status == block_status::inadmissible )
            ++per_row_near[ b.row ];

        depth = std::max( depth, b.level );
    }// for

    sparsity_report  rep;

    rep.row_max.assign( depth + 1, 0 );
    rep.col_max.assign( depth + 1, 0 );
    rep.row_inadmissible_max.assign( depth + 1, 0 );

    for ( auto [ t, n ] : per_row )
    {
        auto &  m = rep.row_max[ tree.rows().node( t ).level ];
        m = std::max( m, n );
    }// for

    for ( auto [ s, n ] : per_col )
    {
        auto &  m = rep.col_max[ tree.cols().node( s ).level ];
        m = std::max( m, n );
    }// for

    for ( auto [ t, n ] : per_row_near )
    {
        auto &  m = rep.row_inadmissible_max[ tree.rows().node( t ).level ];
        m = std::max( m, n );
    }// for

    return rep;
}

}// namespace tih2
