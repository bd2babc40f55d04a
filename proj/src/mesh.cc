//
// Project     : tih2
// Module      : mesh
// Description : triangulated closed surfaces and Galerkin basis families
//

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include <tih2/error.hh>
#include <tih2/mesh.hh>

namespace tih2 {

surface_mesh::surface_mesh ( std::vector< vec3 >      vertices,
                             std::vector< triangle >  triangles )
        : _vertices( std::move( vertices ) )
        , _triangles( std::move( triangles ) )
{
    _normals.reserve( _triangles.size() );
    _areas.reserve( _triangles.size() );

    for ( std::size_t  t = 0; t < _triangles.size(); ++t )
    {
        for ( auto  v : _triangles[t] )
            if ( v >= _vertices.size() )
                throw error( errc::out_of_range, "triangle " + std::to_string( t ) + " references vertex "
                             + std::to_string( v ) + " of " + std::to_string( _vertices.size() ) );

        const auto    n    = cross( corner( index_t(t), 1 ) - corner( index_t(t), 0 ),
                                    corner( index_t(t), 2 ) - corner( index_t(t), 0 ) );
        const double  len  = norm2( n );

        if ( ! ( len > 0 ) )
            throw error( errc::invalid_argument, "degenerate triangle " + std::to_string( t ) );

        _normals.push_back( ( 1.0 / len ) * n );
        _areas.push_back( 0.5 * len );
    }// for
}

vec3
surface_mesh::centroid ( index_t t ) const
{
    return ( 1.0 / 3.0 ) * ( corner( t, 0 ) + corner( t, 1 ) + corner( t, 2 ) );
}

double
surface_mesh::total_area () const
{
    double  sum = 0;

    for ( auto  a : _areas )
        sum += a;

    return sum;
}

void
surface_mesh::check_closed () const
{
    // directed edge -> count; a closed oriented surface has each directed edge
    // exactly once and its reverse exactly once
    std::map< std::pair< index_t, index_t >, int >  directed;

    for ( const auto &  tri : _triangles )
        for ( int  c = 0; c < 3; ++c )
            ++directed[ { tri[c], tri[(c+1)%3] } ];

    for ( const auto & [ e, cnt ] : directed )
    {
        if ( cnt != 1 )
            throw error( errc::invalid_argument, "directed edge (" + std::to_string( e.first ) + ","
                         + std::to_string( e.second ) + ") occurs " + std::to_string( cnt ) + " times" );

        if ( ! directed.contains( { e.second, e.first } ) )
            throw error( errc::invalid_argument, "edge (" + std::to_string( e.first ) + ","
                         + std::to_string( e.second ) + ") has no opposite triangle" );
    }// for
}

surface_mesh
surface_mesh::translated ( const vec3 & c ) const
{
    auto  verts = _vertices;

    for ( auto &  v : verts )
        v = v + c;

    return surface_mesh( std::move( verts ), _triangles );
}

surface_mesh
make_sphere_mesh ( int refinement_level )
{
    if ( refinement_level < 0 || refinement_level > 10 )
        throw error( errc::out_of_range, "refinement level must be in [0,10]" );

    std::vector< vec3 >  verts = { { 1, 0, 0 }, { -1, 0, 0 },
                                   { 0, 1, 0 }, { 0, -1, 0 },
                                   { 0, 0, 1 }, { 0, 0, -1 } };
    std::vector< triangle >  tris;

    // one face per octant, oriented counterclockwise from outside
    for ( int  sx : { 0, 1 } )
        for ( int  sy : { 0, 1 } )
            for ( int  sz : { 0, 1 } )
            {
                const index_t  a = index_t( sx );
                const index_t  b = index_t( 2 + sy );
                const index_t  c = index_t( 4 + sz );

                if ( ( sx + sy + sz ) % 2 == 0 ) tris.push_back( { a, b, c } );
                else                             tris.push_back( { a, c, b } );
            }// for

    for ( int  level = 0; level < refinement_level; ++level )
    {
        std::map< std::pair< index_t, index_t >, index_t >  midpoints;
        std::vector< triangle >                             refined;

        refined.reserve( 4 * tris.size() );

        auto  midpoint = [&] ( index_t u, index_t v )
        {
            const auto  key = std::minmax( u, v );

            if ( auto  it = midpoints.find( key ); it != midpoints.end() )
                return it->second;

            const auto  m = 0.5 * ( verts[u] + verts[v] );

            verts.push_back( ( 1.0 / norm2( m ) ) * m );
            midpoints.emplace( key, index_t( verts.size() - 1 ) );

            return index_t( verts.size() - 1 );
        };

        for ( const auto &  t : tris )
        {
            const auto  ab = midpoint( t[0], t[1] );
            const auto  bc = midpoint( t[1], t[2] );
            const auto  ca = midpoint( t[2], t[0] );

            refined.push_back( { t[0], ab, ca } );
            refined.push_back( { ab, t[1], bc } );
            refined.push_back( { ca, bc, t[2] } );
            refined.push_back( { ab, bc, ca } );
        }// for

        tris = std::move( refined );
    }// for

    return surface_mesh( std::move( verts ), std::move( tris ) );
}

void
write_mesh ( std::ostream & out, const surface_mesh & mesh )
{
    const auto  old = out.precision( 17 );

    for ( const auto &  v : mesh.vertices() )
        out << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';

    for ( const auto &  t : mesh.triangles() )
        out << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';

    out.precision( old );
}

surface_mesh
read_mesh ( std::istream & in )
{
    std::vector< vec3 >      verts;
    std::vector< triangle >  tris;
    std::string              line;
    std::size_t              lineno = 0;

    while ( std::getline( in, line ) )
    {
        ++lineno;

        std::istringstream  rec( line );
        std::string         tag;

        if ( ! ( rec >> tag ) || tag[0] == '#' )
            continue;

        if ( tag == "v" )
        {
            vec3  v;

            if ( ! ( rec >> v[0] >> v[1] >> v[2] ) )
                throw error( errc::format_error, "bad vertex record on line " + std::to_string( lineno ) );

            verts.push_back( v );
        }// if
        else if ( tag == "t" )
        {
            long long  i, j, k;

            if ( ! ( rec >> i >> j >> k ) || i < 0 || j < 0 || k < 0 )
                throw error( errc::format_error, "bad triangle record on line " + std::to_string( lineno ) );

            tris.push_back( { index_t(i), index_t(j), index_t(k) } );
        }// if
        else
            throw error( errc::format_error, "unknown record '" + tag + "' on line " + std::to_string( lineno ) );
    }// while

    return surface_mesh( std::move( verts ), std::move( tris ) );
}

////////////////////////////////////////////////////////////////////////////////
//
// basis_family
//
////////////////////////////////////////////////////////////////////////////////

basis_family::basis_family ( std::shared_ptr< const surface_mesh >  mesh,
                             basis_kind                             kind )
        : _mesh( std::move( mesh ) )
        , _kind( kind )
{
    const auto &  m = *_mesh;

    if ( kind == basis_kind::piecewise_constant )
    {
        const auto  n = m.triangle_count();

        _offsets.resize( n + 1 );
        _support.resize( n );
        _points.resize( n );

        for ( std::size_t  t = 0; t < n; ++t )
        {
            _offsets[t] = t;
            _support[t] = index_t( t );
            _points[t]  = m.centroid( index_t( t ) );
        }// for

        _offsets[n] = n;
    }// if
    else
    {
        const auto  n = m.vertex_count();

        _offsets.assign( n + 1, 0 );

        for ( const auto &  t : m.triangles() )
            for ( auto  v : t )
                ++_offsets[v+1];

        for ( std::size_t  v = 0; v < n; ++v )
            _offsets[v+1] += _offsets[v];

        _support.resize( _offsets[n] );

        auto  fill = std::vector< std::size_t >( _offsets.begin(), _offsets.end() - 1 );

        for ( std::size_t  t = 0; t < m.triangle_count(); ++t )
            for ( auto  v : m.triangles()[t] )
                _support[ fill[v]++ ] = index_t( t );

        _points = m.vertices();
    }// else
}

vec3
basis_family::local_weights ( index_t i, index_t t ) const
{
    if ( _kind == basis_kind::piecewise_constant )
        return ( i == t ) ? vec3{ 1, 1, 1 } : vec3{ 0, 0, 0 };

    const auto &  tri = _mesh->triangles()[t];
    vec3          w{ 0, 0, 0 };

    for ( int  c = 0; c < 3; ++c )
        if ( tri[c] == i )
            w[c] = 1;

    return w;
}

double
basis_family::evaluate ( index_t i, index_t t, const vec3 & barycentric ) const
{
    if ( _kind == basis_kind::piecewise_constant )
        return ( i == t ) ? 1.0 : 0.0;

    return dot( local_weights( i, t ), barycentric );
}

basis_family
make_basis ( std::shared_ptr< const surface_mesh >  mesh,
             basis_kind                             kind )
{
    return basis_family( std::move( mesh ), kind );
}

}// namespace tih2
