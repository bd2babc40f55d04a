#ifndef TIH2_CLUSTERING_HH
#define TIH2_CLUSTERING_HH
//
// Project     : tih2
// Module      : clustering
// Description : level-uniform box cluster trees with integer displacements
//               and per-level support bounding boxes
//

#include <iosfwd>
#include <span>
#include <vector>

#include <tih2/geometry.hh>
#include <tih2/mesh.hh>

namespace tih2 {

//
// geometry shared by all clusters of one level: every cluster box on the
// level is reference_box + edge_lengths (.) p for an integer vector p
//
struct level_geometry
{
    int       level = 0;
    axis_box  reference_box;
    vec3      edge_lengths{ 0, 0, 0 };
    int       split_axis = 0;       // 0-based axis halved when going to level+1
    axis_box  support_box;          // contains reference_box and all shifted supports

    vec3      offset ( const ivec3 & p ) const { return hadamard( edge_lengths, p ); }
};

struct cluster
{
    int                        level = 0;
    ivec3                      displacement{ 0, 0, 0 };
    std::size_t                begin = 0;              // range in cluster_tree::permutation()
    std::size_t                end   = 0;
    index_t                    father = no_index;
    std::array< index_t, 2 >   sons{ no_index, no_index };
    int                        son_count = 0;
    axis_box                   box;                    // contains the characteristic points
    axis_box                   support_box;            // contains box and the supports

    std::size_t  size    () const { return end - begin; }
    bool         is_leaf () const { return son_count == 0; }
};

class cluster_tree
{
public:
    cluster_tree () = default;

    // level-uniform trees carry level geometry; conventional trees do not
    bool         uniform () const { return ! _levels.empty(); }
    int          depth   () const { return _depth; }
    std::size_t  size    () const { return _nodes.size(); }
    std::size_t  index_count () const { return _perm.size(); }

    const cluster &  node ( index_t t ) const { return _nodes[t]; }
    index_t          root () const { return 0; }

    const std::vector< cluster > &         nodes  () const { return _nodes; }
    const std::vector< level_geometry > &  levels () const { return _levels; }
    const level_geometry &                 level  ( int l ) const { return _levels.at( l ); }

    const std::vector< index_t > &         permutation () const { return _perm; }

    // indices of a cluster in tree order
    std::span< const index_t >
    indices ( index_t t ) const
    {
        return { _perm.data() + _nodes[t].begin, _perm.data() + _nodes[t].end };
    }

    std::vector< index_t >  index_set ( index_t t ) const;   // sorted copy
    std::vector< index_t >  leaves    () const;
    std::vector< index_t >  on_level  ( int l ) const;

    // translation m_t of a cluster of a level-uniform tree
    vec3  offset ( index_t t ) const { return _levels[ _nodes[t].level ].offset( _nodes[t].displacement ); }

    // indented text: level, displacement, |I_t|
    void  dump ( std::ostream & out ) const;

    // construction interface for tree builders
    std::vector< cluster > &         mutable_nodes  () { return _nodes; }
    std::vector< level_geometry > &  mutable_levels () { return _levels; }
    std::vector< index_t > &         mutable_permutation () { return _perm; }
    void                             set_depth ( int d ) { _depth = d; }

private:
    std::vector< cluster >         _nodes;
    std::vector< level_geometry >  _levels;
    std::vector< index_t >         _perm;
    int                            _depth = 0;
};

//
// smallest box containing both point families; axes of zero extent are padded
//
axis_box  compute_root_box ( std::span< const vec3 >  points_row,
                             std::span< const vec3 >  points_col );

//
// regular splitting: level l+1 keeps the lower half of level l along
// axis l mod 3; edge lengths are halved exactly
//
std::vector< level_geometry >  build_reference_levels ( const axis_box & root, int lmax );

//
// uniform tree of exact depth lmax; a split sends points on or above the
// midplane to the upper son unless all points lie in the lower half
//
cluster_tree  build_cluster_tree ( std::span< const vec3 >        points,
                                   int                            lmax,
                                   std::vector< level_geometry >  levels );

// fills level support boxes and the per-cluster support boxes
void  compute_support_boxes ( cluster_tree & tree, const basis_family & basis );

// convenience: root box, levels, tree and support boxes in one go
cluster_tree  build_uniform_tree ( const basis_family & basis,
                                   const axis_box &     root,
                                   int                  lmax );

//
// smallest multiple of d that is >= d/(d-1) (min(log2 nI, log2 nJ) - log2(crk k)),
// but at least d
//
int  choose_lmax ( std::size_t nI, std::size_t nJ, std::size_t k, double crk, int d = dim );

// max over levels of diam(support box) / diam(reference box)
double  enlargement_ratio ( const cluster_tree & tree );

// diam(r)^3 / volume(r), maximised over the levels
double  diameter_volume_ratio ( const cluster_tree & tree );

//
// sparsity constant 2^-d (3 + 2/eta)^d C_bb^d omega_d C_dv for the given
// enlargement and diameter-volume constants
//
double  sparsity_constant ( double eta, double c_bb, double c_dv, int d = dim );

}// namespace tih2

#endif // TIH2_CLUSTERING_HH
