#ifndef TIH2_MESH_HH
#define TIH2_MESH_HH
//
// Project     : tih2
// Module      : mesh
// Description : triangulated closed surfaces and Galerkin basis families
//

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include <tih2/geometry.hh>

namespace tih2 {

using triangle = std::array< index_t, 3 >;

//
// closed, orientable surface made of flat triangles; triangles are
// oriented counterclockwise when seen from outside
//
class surface_mesh
{
public:
    surface_mesh () = default;

    // computes normals and areas and validates the triangulation
    surface_mesh ( std::vector< vec3 >      vertices,
                   std::vector< triangle >  triangles );

    std::size_t  vertex_count   () const { return _vertices.size(); }
    std::size_t  triangle_count () const { return _triangles.size(); }

    const std::vector< vec3 > &      vertices  () const { return _vertices; }
    const std::vector< triangle > &  triangles () const { return _triangles; }
    const std::vector< vec3 > &      normals   () const { return _normals; }
    const std::vector< double > &    areas     () const { return _areas; }

    const vec3 &  vertex ( index_t v ) const { return _vertices[v]; }
    vec3          corner ( index_t t, int c ) const { return _vertices[ _triangles[t][c] ]; }
    vec3          centroid ( index_t t ) const;

    double        total_area () const;

    // throws if some edge is not shared by exactly two oppositely oriented triangles
    void          check_closed () const;

    surface_mesh  translated ( const vec3 & c ) const;

private:
    std::vector< vec3 >      _vertices;
    std::vector< triangle >  _triangles;
    std::vector< vec3 >      _normals;
    std::vector< double >    _areas;
};

// octahedron refined by edge-midpoint splitting, projected to the unit sphere
surface_mesh  make_sphere_mesh ( int refinement_level );

// plain-text "v x y z" / "t i j k" records with 0-based indices
void          write_mesh ( std::ostream & out, const surface_mesh & mesh );
surface_mesh  read_mesh  ( std::istream & in );

enum class basis_kind
{
    piecewise_constant,   // one function per triangle
    piecewise_linear      // one continuous hat function per vertex
};

class basis_family
{
public:
    basis_family () = default;
    basis_family ( std::shared_ptr< const surface_mesh >  mesh,
                   basis_kind                             kind );

    basis_kind            kind () const { return _kind; }
    std::size_t           size () const { return _points.size(); }
    const surface_mesh &  mesh () const { return *_mesh; }

    std::shared_ptr< const surface_mesh >  mesh_ptr () const { return _mesh; }

    // triangles on which basis function i does not vanish
    std::span< const index_t >
    support ( index_t i ) const
    {
        return { _support.data() + _offsets[i], _support.data() + _offsets[i+1] };
    }

    const vec3 &                 characteristic_point  ( index_t i ) const { return _points[i]; }
    const std::vector< vec3 > &  characteristic_points () const { return _points; }

    //
    // value of basis function i on triangle t at barycentric coordinates
    // (relative to the triangle's stored corner order)
    //
    double  evaluate ( index_t i, index_t t, const vec3 & barycentric ) const;

    //
    // weights of the three corner barycentric coordinates representing
    // function i on triangle t (constants: 1,1,1; hats: unit vector)
    //
    vec3    local_weights ( index_t i, index_t t ) const;

private:
    std::shared_ptr< const surface_mesh >  _mesh;
    basis_kind                             _kind = basis_kind::piecewise_constant;
    std::vector< std::size_t >             _offsets;
    std::vector< index_t >                 _support;
    std::vector< vec3 >                    _points;
};

basis_family  make_basis ( std::shared_ptr< const surface_mesh >  mesh,
                           basis_kind                             kind );

}// namespace tih2

#endif // TIH2_MESH_HH
