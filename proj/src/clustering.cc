//
// Project     : tih2
// Module      : clustering
// Description : level-uniform box cluster trees with integer displacements
//               and per-level support bounding boxes
//

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include <tih2/clustering.hh>
#include <tih2/error.hh>

namespace tih2 {

std::vector< index_t >
cluster_tree::index_set ( index_t t ) const
{
    auto  idx = indices( t );
    auto  res = std::vector< index_t >( idx.begin(), idx.end() );

    std::sort( res.begin(), res.end() );

    return res;
}

std::vector< index_t >
cluster_tree::leaves () const
{
    std::vector< index_t >  res;

    for ( std::size_t  t = 0; t < _nodes.size(); ++t )
        if ( _nodes[t].is_leaf() )
            res.push_back( index_t( t ) );

    return res;
}

std::vector< index_t >
cluster_tree::on_level ( int l ) const
{
    std::vector< index_t >  res;

    for ( std::size_t  t = 0; t < _nodes.size(); ++t )
        if ( _nodes[t].level == l )
            res.push_back( index_t( t ) );

    return res;
}

void
cluster_tree::dump ( std::ostream & out ) const
{
    // nodes are stored in depth-first preorder
    for ( const auto &  c : _nodes )
    {
        out << std::string( 2 * c.level, ' ' ) << c.level
            << " p=(" << c.displacement[0] << ',' << c.displacement[1] << ',' << c.displacement[2] << ')'
            << " |I|=" << c.size() << '\n';
    }// for
}

axis_box
compute_root_box ( std::span< const vec3 >  points_row,
                   std::span< const vec3 >  points_col )
{
    if ( points_row.empty() && points_col.empty() )
        throw error( errc::invalid_argument, "compute_root_box: no points" );

    auto  box = axis_box::empty();

    for ( const auto &  x : points_row ) box.include( x );
    for ( const auto &  y : points_col ) box.include( y );

    return box;
}

std::vector< level_geometry >
build_reference_levels ( const axis_box & root, int lmax )
{
    if ( lmax < 0 )
        throw error( errc::invalid_argument, "build_reference_levels: negative maximal level" );

    auto    r0    = root;
    double  scale = 1;

    for ( int  i = 0; i < dim; ++i )
        scale = std::max( { scale, std::abs( root.lower[i] ), std::abs( root.upper[i] ), root.upper[i] - root.lower[i] } );

    for ( int  i = 0; i < dim; ++i )
    {
        if ( r0.upper[i] - r0.lower[i] <= 0 )
        {
            const double  pad = 1024 * std::numeric_limits< double >::epsilon() * scale;

            r0.lower[i] -= pad;
            r0.upper[i] += pad;
        }// if
    }// for

    std::vector< level_geometry >  levels( lmax + 1 );
    vec3                           delta = r0.extent();

    // lower + delta must reach the upper bound in floating point
    for ( int  i = 0; i < dim; ++i )
        while ( r0.lower[i] + delta[i] < r0.upper[i] )
            delta[i] = std::nextafter( delta[i], std::numeric_limits< double >::infinity() );

    for ( int  l = 0; l <= lmax; ++l )
    {
        auto &  g = levels[l];

        g.level         = l;
        g.edge_lengths  = delta;
        g.split_axis    = l % dim;
        g.reference_box = { r0.lower, r0.lower + delta };
        g.support_box   = g.reference_box;

        delta[ g.split_axis ] *= 0.5;
    }// for

    return levels;
}

namespace {

struct uniform_builder
{
    std::span< const vec3 >                points;
    const std::vector< level_geometry > &  levels;
    int                                    lmax;
    std::vector< cluster > &               nodes;
    std::vector< index_t > &               perm;

    axis_box
    box_of ( int l, const ivec3 & p ) const
    {
        const auto &  g  = levels[l];
        const auto &  a  = g.reference_box.lower;
        axis_box      b;

        for ( int  i = 0; i < dim; ++i )
        {
            b.lower[i] = a[i] + g.edge_lengths[i] * double( p[i] );
            b.upper[i] = a[i] + g.edge_lengths[i] * double( p[i] + 1 );
        }// for

        return b;
    }

    index_t
    add ( int l, const ivec3 & p, std::size_t begin, std::size_t end, index_t father )
    {
        cluster  c;

        c.level        = l;
        c.displacement = p;
        c.begin        = begin;
        c.end          = end;
        c.father       = father;
        c.box          = box_of( l, p );
        c.support_box  = c.box;

        nodes.push_back( c );

        return index_t( nodes.size() - 1 );
    }

    void
    split ( index_t t )
    {
        const auto  l = nodes[t].level;

        if ( l >= lmax )
            return;

        const auto    p     = nodes[t].displacement;
        const int     axis  = levels[l].split_axis;
        const auto &  child = levels[l+1];
        const double  mid   = child.reference_box.lower[axis] + child.edge_lengths[axis] * double( 2 * p[axis] + 1 );
        const auto    first = perm.begin() + std::ptrdiff_t( nodes[t].begin );
        const auto    last  = perm.begin() + std::ptrdiff_t( nodes[t].end );

        const bool    all_lower = std::all_of( first, last, [&] ( index_t i ) { return points[i][axis] <= mid; } );

        auto  p1 = p;
        auto  p2 = p;

        p1[axis] = 2 * p[axis];
        p2[axis] = 2 * p[axis] + 1;

        std::size_t  cut = nodes[t].end;

        if ( ! all_lower )
        {
            auto  it = std::stable_partition( first, last, [&] ( index_t i ) { return points[i][axis] < mid; } );

            cut = nodes[t].begin + std::size_t( it - first );
        }// if

        const auto  begin = nodes[t].begin;
        const auto  end   = nodes[t].end;

        if ( cut > begin )
        {
            const auto  s = add( l+1, p1, begin, cut, t );

            nodes[t].sons[ nodes[t].son_count++ ] = s;
            split( s );
        }// if

        if ( cut < end )
        {
            const auto  s = add( l+1, p2, cut, end, t );

            nodes[t].sons[ nodes[t].son_count++ ] = s;
            split( s );
        }// if
    }
};

}// namespace anonymous

cluster_tree
build_cluster_tree ( std::span< const vec3 >        points,
                     int                            lmax,
                     std::vector< level_geometry >  levels )
{
    if ( lmax < 0 || levels.size() != std::size_t( lmax + 1 ) )
        throw error( errc::invalid_argument, "build_cluster_tree: level geometry does not match maximal level" );

    if ( points.empty() )
        throw error( errc::invalid_argument, "build_cluster_tree: no points" );

    for ( std::size_t  i = 0; i < points.size(); ++i )
        if ( ! levels[0].reference_box.contains( points[i] ) )
            throw error( errc::out_of_range, "build_cluster_tree: point " + std::to_string( i ) + " outside root box" );

    cluster_tree  tree;

    tree.mutable_levels() = std::move( levels );

    auto &  perm = tree.mutable_permutation();

    perm.resize( points.size() );

    for ( std::size_t  i = 0; i < points.size(); ++i )
        perm[i] = index_t( i );

    uniform_builder  builder{ points, tree.levels(), lmax, tree.mutable_nodes(), perm };

    builder.add( 0, { 0, 0, 0 }, 0, points.size(), no_index );
    builder.split( 0 );

    tree.set_depth( lmax );

    return tree;
}

void
compute_support_boxes ( cluster_tree & tree, const basis_family & basis )
{
    if ( ! tree.uniform() )
        throw error( errc::invalid_argument, "compute_support_boxes: tree has no level geometry" );

    auto &        levels = tree.mutable_levels();
    auto &        nodes  = tree.mutable_nodes();
    const auto &  mesh   = basis.mesh();

    for ( auto &  g : levels )
        g.support_box = g.reference_box;

    for ( std::size_t  t = 0; t < nodes.size(); ++t )
    {
        auto &      g = levels[ nodes[t].level ];
        const auto  m = g.offset( nodes[t].displacement );

        for ( auto  i : tree.indices( index_t( t ) ) )
            for ( auto  tri : basis.support( i ) )
                for ( int  c = 0; c < 3; ++c )
                    g.support_box.include( mesh.corner( tri, c ) - m );
    }// for

    // (v - m) + m may round away from v: widen by ulps until containment holds
    for ( std::size_t  t = 0; t < nodes.size(); ++t )
    {
        auto &      g = levels[ nodes[t].level ];
        const auto  m = g.offset( nodes[t].displacement );

        for ( auto  i : tree.indices( index_t( t ) ) )
            for ( auto  tri : basis.support( i ) )
                for ( int  c = 0; c < 3; ++c )
                {
                    const auto  v = mesh.corner( tri, c );

                    for ( int  a = 0; a < dim; ++a )
                    {
                        while ( g.support_box.lower[a] + m[a] > v[a] )
                            g.support_box.lower[a] = std::nextafter( g.support_box.lower[a], -std::numeric_limits< double >::infinity() );

                        while ( g.support_box.upper[a] + m[a] < v[a] )
                            g.support_box.upper[a] = std::nextafter( g.support_box.upper[a], std::numeric_limits< double >::infinity() );
                    }// for
                }// for
    }// for

    for ( std::size_t  t = 0; t < nodes.size(); ++t )
    {
        const auto &  g = levels[ nodes[t].level ];

        nodes[t].support_box = g.support_box.translated( g.offset( nodes[t].displacement ) );
    }// for
}

cluster_tree
build_uniform_tree ( const basis_family & basis,
                     const axis_box &     root,
                     int                  lmax )
{
    auto  tree = build_cluster_tree( basis.characteristic_points(), lmax, build_reference_levels( root, lmax ) );

    compute_support_boxes( tree, basis );

    return tree;
}

int
choose_lmax ( std::size_t nI, std::size_t nJ, std::size_t k, double crk, int d )
{
    if ( d < 2 )
        throw error( errc::invalid_argument, "choose_lmax: dimension must be at least 2" );

    if ( ! ( crk > 0 ) || k == 0 || crk * double( k ) > double( std::min( nI, nJ ) ) )
        throw error( errc::invalid_argument, "choose_lmax: requires C_rk * k <= min(|I|,|J|)" );

    const double  bound = double( d ) / double( d - 1 ) *
                          ( std::min( std::log2( double( nI ) ), std::log2( double( nJ ) ) ) - std::log2( crk * double( k ) ) );
    int           l     = d;

    while ( double( l ) < bound )
        l += d;

    return l;
}

double
enlargement_ratio ( const cluster_tree & tree )
{
    double  ratio = 1;

    for ( const auto &  g : tree.levels() )
        ratio = std::max( ratio, g.support_box.diameter() / g.reference_box.diameter() );

    return ratio;
}

double
diameter_volume_ratio ( const cluster_tree & tree )
{
    double  ratio = 0;

    for ( const auto &  g : tree.levels() )
    {
        const double  diam = g.reference_box.diameter();

        ratio = std::max( ratio, diam * diam * diam / g.reference_box.volume() );
    }// for

    return ratio;
}

double
sparsity_constant ( double eta, double c_bb, double c_dv, int d )
{
    const double  omega = std::pow( std::numbers::pi, 0.5 * d ) / std::tgamma( 0.5 * d + 1.0 );

    return std::pow( 0.5 * ( 3.0 + 2.0 / eta ) * c_bb, d ) * omega * c_dv;
}

}// namespace tih2
