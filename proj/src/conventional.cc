//
// Project     : tih2
// Module      : h2core
// Description : conventional cluster trees and structural storage counts
//

#include <algorithm>
#include <set>

#include <tih2/error.hh>
#include <tih2/h2matrix.hh>

namespace tih2 {

namespace {

struct conventional_builder
{
    const basis_family &      basis;
    std::size_t               min_split;
    std::vector< cluster > &  nodes;
    std::vector< index_t > &  perm;
    int                       depth = 0;

    index_t
    add ( int l, std::size_t begin, std::size_t end, index_t father )
    {
        cluster  c;

        c.level  = l;
        c.begin  = begin;
        c.end    = end;
        c.father = father;
        c.box    = axis_box::empty();

        for ( std::size_t  p = begin; p < end; ++p )
            c.box.include( basis.characteristic_point( perm[p] ) );

        c.support_box = c.box;

        const auto &  mesh = basis.mesh();

        for ( std::size_t  p = begin; p < end; ++p )
            for ( auto  tri : basis.support( perm[p] ) )
                for ( int  v = 0; v < 3; ++v )
                    c.support_box.include( mesh.corner( tri, v ) );

        nodes.push_back( c );
        depth = std::max( depth, l );

        return index_t( nodes.size() - 1 );
    }

    void
    split ( index_t t )
    {
        const auto  box  = nodes[t].box;
        const auto  ext  = box.extent();
        const int   axis = int( std::max_element( ext.begin(), ext.end() ) - ext.begin() );

        if ( nodes[t].size() < min_split || ext[axis] <= 0 )
            return;

        const double  mid   = box.lower[axis] + 0.5 * ext[axis];
        const auto    first = perm.begin() + std::ptrdiff_t( nodes[t].begin );
        const auto    last  = perm.begin() + std::ptrdiff_t( nodes[t].end );
        const auto    it    = std::stable_partition( first, last, [&] ( index_t i ) {
                                  return basis.characteristic_point( i )[axis] < mid; } );
        const auto    cut   = nodes[t].begin + std::size_t( it - first );
        const auto    begin = nodes[t].begin;
        const auto    end   = nodes[t].end;
        const int     l     = nodes[t].level + 1;

        for ( auto [ b, e ] : { std::pair{ begin, cut }, std::pair{ cut, end } } )
        {
            if ( b == e )
                continue;

            const auto  s = add( l, b, e, t );

            nodes[t].sons[ nodes[t].son_count++ ] = s;
            split( s );
        }// for
    }
};

}// namespace anonymous

cluster_tree
build_conventional_tree ( const basis_family &  basis,
                          std::size_t           k )
{
    if ( basis.size() == 0 )
        throw error( errc::invalid_argument, "build_conventional_tree: empty basis" );

    cluster_tree  tree;
    auto &        perm = tree.mutable_permutation();

    perm.resize( basis.size() );

    for ( std::size_t  i = 0; i < perm.size(); ++i )
        perm[i] = index_t( i );

    conventional_builder  builder{ basis, 2 * k, tree.mutable_nodes(), perm };

    builder.add( 0, 0, basis.size(), no_index );
    builder.split( 0 );
    tree.set_depth( builder.depth );

    return tree;
}

storage_report
count_storage ( const block_tree &  blocks,
                int                 theta,
                h2_variant          variant )
{
    const auto &    rtree = blocks.rows();
    const auto &    ctree = blocks.cols();
    const auto      k     = tensor_rank( theta );
    storage_report  r;

    r.rows  = rtree.index_count();
    r.cols  = ctree.index_count();
    r.theta = theta;
    r.k     = k;

    for ( const auto & c : rtree.nodes() ) r.lmax = std::max( r.lmax, c.level );

    const std::size_t  levels = std::size_t( std::max( rtree.depth(), r.lmax ) + 1 );

    r.row_transfers.assign( levels, 0 );
    r.col_transfers.assign( levels, 0 );
    r.couplings.assign( levels, 0 );

    for ( auto  t : rtree.leaves() ) r.leaf_units += k * rtree.node( t ).size();
    for ( auto  s : ctree.leaves() ) r.leaf_units += k * ctree.node( s ).size();

    auto  count_transfers = [&] ( const cluster_tree & tree, std::vector< std::size_t > & per_level )
    {
        std::set< transfer_key >  keys;

        for ( const auto &  c : tree.nodes() )
        {
            if ( c.father == no_index )
                continue;

            if ( variant == h2_variant::conventional )
            {
                per_level[ c.level ]++;
                continue;
            }// if

            const auto &  f  = tree.node( c.father );
            const int     ax = tree.level( f.level ).split_axis;

            if ( keys.insert( { c.level, int( c.displacement[ax] - 2 * f.displacement[ax] ) } ).second )
                per_level[ c.level ]++;
        }// for
    };

    count_transfers( rtree, r.row_transfers );
    count_transfers( ctree, r.col_transfers );

    std::set< coupling_key >  ckeys;

    for ( auto  b : blocks.admissible_leaves() )
    {
        const auto &  blk = blocks.node( b );

        if ( variant == h2_variant::conventional )
        {
            r.couplings[ blk.level ]++;
            continue;
        }// if

        const auto &  t = rtree.node( blk.row );
        const auto &  s = ctree.node( blk.col );
        coupling_key  key{ t.level, { 0, 0, 0 } };

        for ( int  i = 0; i < dim; ++i )
            key.diff[i] = t.displacement[i] - s.displacement[i];

        if ( ckeys.insert( key ).second )
            r.couplings[ t.level ]++;
    }// for

    for ( auto  b : blocks.inadmissible_leaves() )
        r.nearfield_units += rtree.node( blocks.node( b ).row ).size() * ctree.node( blocks.node( b ).col ).size();

    std::size_t  nt = 0, nc = 0;

    for ( auto  c : r.row_transfers ) nt += c;
    for ( auto  c : r.col_transfers ) nt += c;
    for ( auto  c : r.couplings )     nc += c;

    r.transfer_units = k * k * nt;
    r.coupling_units = k * k * nc;

    return r;
}

}// namespace tih2
