//
// Project     : tih2
// Module      : h2core
// Description : H2-matrix assembly, matvec and storage accounting
//

#include <map>
#include <ostream>

#include <tih2/error.hh>
#include <tih2/h2matrix.hh>

namespace tih2 {

void
write_storage_header ( std::ostream & out )
{
    out << "n,theta,k,lmax,leaf_MB,transfer_MB,nearfield_MB,coupling_MB\n";
}

void
write_storage_row ( std::ostream &          out,
                    const storage_report &  r )
{
    char  buf[256];

    std::snprintf( buf, sizeof( buf ), "%zu,%d,%zu,%d,%.4f,%.4f,%.4f,%.4f\n",
                   r.rows, r.theta, r.k, r.lmax,
                   storage_report::megabytes( r.leaf_units ),
                   storage_report::megabytes( r.transfer_units ),
                   storage_report::megabytes( r.nearfield_units ),
                   storage_report::megabytes( r.coupling_units ) );
    out << buf;
}

dense_matrix
transfer_matrix ( const tensor_grid &  father,
                  const tensor_grid &  son,
                  const vec3 &         shift )
{
    dense_matrix           e( son.size(), father.size() );
    std::vector< double >  vals( father.size() );

    for ( std::size_t  mu = 0; mu < son.size(); ++mu )
    {
        father.lagrange_all( son.point( mu ) + shift, vals );

        for ( std::size_t  nu = 0; nu < father.size(); ++nu )
            e( mu, nu ) = vals[nu];
    }// for

    return e;
}

dense_matrix
coupling_matrix ( const tensor_grid &  row,
                  const tensor_grid &  col,
                  const vec3 &         shift )
{
    dense_matrix  s( row.size(), col.size() );

    for ( std::size_t  mu = 0; mu < col.size(); ++mu )
    {
        const vec3  y = col.point( mu ) + shift;

        for ( std::size_t  nu = 0; nu < row.size(); ++nu )
            s( nu, mu ) = laplace_single_layer( row.point( nu ), y );
    }// for

    return s;
}

vec3
son_shift ( const cluster_tree &  tree,
            index_t               son )
{
    const auto &  c = tree.node( son );

    if ( c.father == no_index )
        throw error( errc::invalid_argument, "son_shift: root has no father" );

    const auto &  f    = tree.node( c.father );
    const int     axis = tree.level( f.level ).split_axis;
    ivec3         e{ 0, 0, 0 };

    e[axis] = c.displacement[axis] - 2 * f.displacement[axis];

    return tree.level( c.level ).offset( e );
}

namespace {

ivec3
displacement_difference ( const cluster &  t,
                          const cluster &  s )
{
    ivec3  d;

    for ( int  i = 0; i < dim; ++i )
        d[i] = t.displacement[i] - s.displacement[i];

    return d;
}

}// namespace anonymous

h2matrix
assemble_common ( kernel_kind                          kernel,
                  const basis_family &                 rows,
                  const basis_family &                 cols,
                  std::shared_ptr< const block_tree >  blocks,
                  const h2_options &                   opts,
                  h2_variant                           variant )
{
    if ( ! blocks )
        throw error( errc::invalid_argument, "assemble_h2: missing block tree" );

    const auto &  rtree = blocks->rows();
    const auto &  ctree = blocks->cols();

    if ( rtree.index_count() != rows.size() || ctree.index_count() != cols.size() )
        throw error( errc::dimension_mismatch, "assemble_h2: cluster trees do not match the basis families" );

    if ( opts.theta < 0 )
        throw error( errc::invalid_argument, "assemble_h2: negative interpolation degree" );

    const bool  dedup = variant == h2_variant::deduplicated;

    if ( dedup && ! ( rtree.uniform() && ctree.uniform() ) )
        throw error( errc::invalid_argument, "assemble_h2: deduplication requires level-uniform cluster trees" );

    h2matrix  h;

    h._kernel      = kernel;
    h._variant     = variant;
    h._col_variant = kernel == kernel_kind::double_layer ? moment_variant::normal_derivative : moment_variant::value;
    h._theta       = opts.theta;
    h._k           = tensor_rank( opts.theta );
    h._rows        = rows;
    h._cols        = cols;
    h._blocks      = blocks;

    const auto                 rule = make_triangle_rule( opts.quad.regular_order );
    const galerkin_quadrature  quad( rows.mesh(), opts.quad );
    const int                  theta = opts.theta;

    if ( dedup )
    {
        for ( const auto &  g : rtree.levels() ) h._row_grids.emplace_back( theta, g.support_box );
        for ( const auto &  g : ctree.levels() ) h._col_grids.emplace_back( theta, g.support_box );
    }// if

    auto  row_grid = [&] ( index_t t ) {
        return dedup ? h._row_grids[ rtree.node( t ).level ] : tensor_grid( theta, rtree.node( t ).support_box );
    };
    auto  col_grid = [&] ( index_t s ) {
        return dedup ? h._col_grids[ ctree.node( s ).level ] : tensor_grid( theta, ctree.node( s ).support_box );
    };

    //
    // leaf matrices
    //

    h._row_leaf.resize( rtree.size() );
    h._col_leaf.resize( ctree.size() );

    for ( index_t  t = 0; t < rtree.size(); ++t )
        if ( rtree.node( t ).is_leaf() )
            h._row_leaf[t] = moments( rows, rtree.indices( t ), row_grid( t ), moment_variant::value, rule,
                                      dedup ? rtree.offset( t ) : vec3{ 0, 0, 0 } );

    for ( index_t  s = 0; s < ctree.size(); ++s )
        if ( ctree.node( s ).is_leaf() )
            h._col_leaf[s] = moments( cols, ctree.indices( s ), col_grid( s ), h._col_variant, rule,
                                      dedup ? ctree.offset( s ) : vec3{ 0, 0, 0 } );

    //
    // transfer matrices
    //

    auto  build_transfers = [&] ( const cluster_tree &          tree,
                                  const std::vector< tensor_grid > & grids,
                                  std::vector< dense_matrix > & store,
                                  std::vector< int > &          store_level,
                                  std::vector< int > &          of )
    {
        of.assign( tree.size(), -1 );

        std::map< transfer_key, int >  keys;

        for ( index_t  t = 0; t < tree.size(); ++t )
        {
            const auto &  c = tree.node( t );

            if ( c.father == no_index )
                continue;

            if ( dedup )
            {
                const auto &     f   = tree.node( c.father );
                const int        ax  = tree.level( f.level ).split_axis;
                const transfer_key  key{ c.level, int( c.displacement[ax] - 2 * f.displacement[ax] ) };
                auto             it  = keys.find( key );

                if ( it == keys.end() )
                {
                    store.push_back( transfer_matrix( grids[ f.level ], grids[ c.level ], son_shift( tree, t ) ) );
                    store_level.push_back( c.level );
                    it = keys.emplace( key, int( store.size() - 1 ) ).first;
                }// if

                of[t] = it->second;
            }// if
            else
            {
                store.push_back( transfer_matrix( tensor_grid( theta, tree.node( c.father ).support_box ),
                                                  tensor_grid( theta, c.support_box ), { 0, 0, 0 } ) );
                store_level.push_back( c.level );
                of[t] = int( store.size() - 1 );
            }// else
        }// for
    };

    build_transfers( rtree, h._row_grids, h._row_transfers, h._row_transfers_level, h._row_transfer_of );
    build_transfers( ctree, h._col_grids, h._col_transfers, h._col_transfers_level, h._col_transfer_of );

    //
    // coupling matrices
    //

    const auto &  adm = blocks->admissible_leaves();

    h._coupling_of.assign( adm.size(), -1 );

    std::map< coupling_key, int >  ckeys;

    for ( std::size_t  l = 0; l < adm.size(); ++l )
    {
        const auto &  b = blocks->node( adm[l] );
        const auto &  t = rtree.node( b.row );
        const auto &  s = ctree.node( b.col );

        if ( dedup )
        {
            const coupling_key  key{ t.level, displacement_difference( t, s ) };
            auto                it = ckeys.find( key );

            if ( it == ckeys.end() )
            {
                const ivec3  back = displacement_difference( s, t );

                h._couplings.push_back( coupling_matrix( h._row_grids[ t.level ], h._col_grids[ s.level ],
                                                         rtree.level( t.level ).offset( back ) ) );
                h._couplings_level.push_back( t.level );
                h._coupling_users.emplace_back();
                it = ckeys.emplace( key, int( h._couplings.size() - 1 ) ).first;
            }// if

            h._coupling_of[l] = it->second;
        }// if
        else
        {
            h._couplings.push_back( coupling_matrix( row_grid( b.row ), col_grid( b.col ), { 0, 0, 0 } ) );
            h._couplings_level.push_back( b.level );
            h._coupling_users.emplace_back();
            h._coupling_of[l] = int( h._couplings.size() - 1 );
        }// else

        h._coupling_users[ h._coupling_of[l] ].push_back( index_t( l ) );
    }// for

    //
    // nearfield
    //

    const auto &  inadm = blocks->inadmissible_leaves();

    h._nearfield.resize( inadm.size() );

    for ( std::size_t  l = 0; l < inadm.size(); ++l )
    {
        const auto &  b = blocks->node( inadm[l] );

        h._nearfield[l] = assemble_block( kernel, rows, rtree.indices( b.row ), cols, ctree.indices( b.col ), quad );
    }// for

    if ( opts.mass_factor != 0 )
    {
        // sparse mass entries go into the nearfield block holding (i,j)
        std::vector< index_t >  row_leaf( rows.size() ), row_pos( rows.size() );
        std::vector< index_t >  col_leaf( cols.size() ), col_pos( cols.size() );

        for ( auto  t : rtree.leaves() )
        {
            const auto  idx = rtree.indices( t );

            for ( std::size_t  p = 0; p < idx.size(); ++p ) { row_leaf[ idx[p] ] = t; row_pos[ idx[p] ] = index_t( p ); }
        }// for

        for ( auto  s : ctree.leaves() )
        {
            const auto  idx = ctree.indices( s );

            for ( std::size_t  p = 0; p < idx.size(); ++p ) { col_leaf[ idx[p] ] = s; col_pos[ idx[p] ] = index_t( p ); }
        }// for

        std::map< std::pair< index_t, index_t >, std::size_t >  near_of;

        for ( std::size_t  l = 0; l < inadm.size(); ++l )
            near_of[ { blocks->node( inadm[l] ).row, blocks->node( inadm[l] ).col } ] = l;

        for ( const auto &  e : assemble_mass( rows, cols ) )
        {
            auto  it = near_of.find( { row_leaf[ e.row ], col_leaf[ e.col ] } );

            if ( it == near_of.end() )
                throw error( errc::invalid_argument, "assemble_h2: mass entry outside the nearfield" );

            h._nearfield[ it->second ]( row_pos[ e.row ], col_pos[ e.col ] ) += opts.mass_factor * e.value;
        }// for
    }// if

    return h;
}

h2matrix
assemble_h2 ( kernel_kind                          kernel,
              const basis_family &                 rows,
              const basis_family &                 cols,
              std::shared_ptr< const block_tree >  blocks,
              const h2_options &                   opts )
{
    return assemble_common( kernel, rows, cols, std::move( blocks ), opts, h2_variant::deduplicated );
}

h2matrix
assemble_h2_conventional ( kernel_kind                          kernel,
                           const basis_family &                 rows,
                           const basis_family &                 cols,
                           std::shared_ptr< const block_tree >  blocks,
                           const h2_options &                   opts )
{
    return assemble_common( kernel, rows, cols, std::move( blocks ), opts, h2_variant::conventional );
}

void
h2matrix::matvec ( std::span< const double >  x,
                   std::span< double >        y ) const
{
    if ( x.size() != cols() || y.size() != rows() )
        throw error( errc::dimension_mismatch, "matvec: vector sizes do not match the matrix" );

    std::fill( y.begin(), y.end(), 0.0 );

    const auto &  rtree = _blocks->rows();
    const auto &  ctree = _blocks->cols();
    const auto    k     = Eigen::Index( _k );

    //
    // forward transformation, sons are stored after their fathers
    //

    dense_matrix  xh = dense_matrix::Zero( k, Eigen::Index( ctree.size() ) );

    for ( std::size_t  s = ctree.size(); s-- > 0; )
    {
        const auto &  c = ctree.node( index_t( s ) );

        if ( c.is_leaf() )
        {
            const auto       idx = ctree.indices( index_t( s ) );
            Eigen::VectorXd  xs( idx.size() );

            for ( std::size_t  j = 0; j < idx.size(); ++j )
                xs[ Eigen::Index( j ) ] = x[ idx[j] ];

            xh.col( Eigen::Index( s ) ).noalias() += _col_leaf[s].transpose() * xs;
        }// if

        if ( c.father != no_index )
            xh.col( c.father ).noalias() += _col_transfers[ _col_transfer_of[s] ].transpose() * xh.col( Eigen::Index( s ) );
    }// for

    //
    // coupling, grouped by stored matrix
    //

    dense_matrix  yh = dense_matrix::Zero( k, Eigen::Index( rtree.size() ) );
    const auto &  adm = _blocks->admissible_leaves();

    for ( std::size_t  id = 0; id < _couplings.size(); ++id )
    {
        const auto &  users = _coupling_users[id];
        dense_matrix  xs( k, Eigen::Index( users.size() ) );

        for ( std::size_t  u = 0; u < users.size(); ++u )
            xs.col( Eigen::Index( u ) ) = xh.col( _blocks->node( adm[ users[u] ] ).col );

        const dense_matrix  ys = _couplings[id] * xs;

        for ( std::size_t  u = 0; u < users.size(); ++u )
            yh.col( _blocks->node( adm[ users[u] ] ).row ) += ys.col( Eigen::Index( u ) );
    }// for

    //
    // backward transformation
    //

    for ( std::size_t  t = 0; t < rtree.size(); ++t )
    {
        const auto &  c = rtree.node( index_t( t ) );

        if ( c.father != no_index )
            yh.col( Eigen::Index( t ) ).noalias() += _row_transfers[ _row_transfer_of[t] ] * yh.col( c.father );

        if ( c.is_leaf() )
        {
            const auto             idx = rtree.indices( index_t( t ) );
            const Eigen::VectorXd  yt  = _row_leaf[t] * yh.col( Eigen::Index( t ) );

            for ( std::size_t  i = 0; i < idx.size(); ++i )
                y[ idx[i] ] += yt[ Eigen::Index( i ) ];
        }// if
    }// for

    //
    // nearfield
    //

    const auto &  inadm = _blocks->inadmissible_leaves();

    for ( std::size_t  l = 0; l < inadm.size(); ++l )
    {
        const auto &     b    = _blocks->node( inadm[l] );
        const auto       ridx = rtree.indices( b.row );
        const auto       cidx = ctree.indices( b.col );
        Eigen::VectorXd  xs( cidx.size() );

        for ( std::size_t  j = 0; j < cidx.size(); ++j )
            xs[ Eigen::Index( j ) ] = x[ cidx[j] ];

        const Eigen::VectorXd  ys = _nearfield[l] * xs;

        for ( std::size_t  i = 0; i < ridx.size(); ++i )
            y[ ridx[i] ] += ys[ Eigen::Index( i ) ];
    }// for
}

std::vector< double >
h2matrix::apply ( std::span< const double >  x ) const
{
    std::vector< double >  y( rows() );

    matvec( x, y );

    return y;
}

storage_report
h2matrix::storage () const
{
    storage_report  r;
    const auto &    rtree = _blocks->rows();
    const auto      k2    = _k * _k;

    r.rows  = rows();
    r.cols  = cols();
    r.theta = _theta;
    r.k     = _k;

    for ( const auto & c : rtree.nodes() ) r.lmax = std::max( r.lmax, c.level );

    for ( const auto & v : _row_leaf ) r.leaf_units += std::size_t( v.size() );
    for ( const auto & w : _col_leaf ) r.leaf_units += std::size_t( w.size() );

    r.transfer_units = k2 * ( _row_transfers.size() + _col_transfers.size() );
    r.coupling_units = k2 * _couplings.size();

    for ( const auto & n : _nearfield ) r.nearfield_units += std::size_t( n.size() );

    const std::size_t  levels = std::size_t( std::max( rtree.depth(), r.lmax ) + 1 );

    r.row_transfers.assign( levels, 0 );
    r.col_transfers.assign( levels, 0 );
    r.couplings.assign( levels, 0 );

    for ( auto  l : _row_transfers_level ) r.row_transfers[l]++;
    for ( auto  l : _col_transfers_level ) r.col_transfers[l]++;
    for ( auto  l : _couplings_level )     r.couplings[l]++;

    return r;
}

operator_setup
make_operator_setup ( std::shared_ptr< const surface_mesh >  mesh,
                      kernel_kind                            kernel,
                      int                                    theta,
                      double                                 eta,
                      double                                 crk,
                      h2_variant                             variant,
                      int                                    lmax )
{
    if ( theta < 0 )
        throw error( errc::invalid_argument, "make_operator_setup: negative interpolation degree" );

    operator_setup  op;

    op.kernel  = kernel;
    op.variant = variant;
    op.theta   = theta;
    op.rows    = make_basis( mesh, basis_kind::piecewise_constant );
    op.cols    = kernel == kernel_kind::single_layer ? op.rows : make_basis( mesh, basis_kind::piecewise_linear );

    const bool  same = kernel == kernel_kind::single_layer;
    const auto  k    = tensor_rank( theta );

    std::shared_ptr< const cluster_tree >  rtree, ctree;

    if ( variant == h2_variant::deduplicated )
    {
        const auto  root = same ? compute_root_box( op.rows.characteristic_points(), {} )
                                : compute_root_box( op.rows.characteristic_points(), op.cols.characteristic_points() );

        op.lmax = lmax >= 0 ? lmax : choose_lmax( op.rows.size(), op.cols.size(), k, crk );
        rtree   = std::make_shared< const cluster_tree >( build_uniform_tree( op.rows, root, op.lmax ) );
        ctree   = same ? rtree : std::make_shared< const cluster_tree >( build_uniform_tree( op.cols, root, op.lmax ) );
    }// if
    else
    {
        rtree   = std::make_shared< const cluster_tree >( build_conventional_tree( op.rows, k ) );
        ctree   = same ? rtree : std::make_shared< const cluster_tree >( build_conventional_tree( op.cols, k ) );
        op.lmax = std::max( rtree->depth(), ctree->depth() );
    }// else

    op.blocks = std::make_shared< const block_tree >( rtree, ctree, eta );

    return op;
}

h2matrix
assemble ( const operator_setup &  setup,
           const h2_options &      opts )
{
    auto  o = opts;

    o.theta = setup.theta;

    if ( setup.variant == h2_variant::deduplicated )
        return assemble_h2( setup.kernel, setup.rows, setup.cols, setup.blocks, o );

    return assemble_h2_conventional( setup.kernel, setup.rows, setup.cols, setup.blocks, o );
}

}// namespace tih2
