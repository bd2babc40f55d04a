#ifndef TIH2_INTERPOLATION_HH
#define TIH2_INTERPOLATION_HH
//
// Project     : tih2
// Module      : interpolation
// Description : tensor Chebyshev interpolation on axis-parallel boxes
//

#include <span>
#include <vector>

#include <tih2/geometry.hh>

namespace tih2 {

//
// Chebyshev points of the first kind cos(pi(2v+1)/(2 degree+2)), mapped
// affinely to [a,b]; returned in the order v = 0..degree
//
std::vector< double >  chebyshev_nodes ( int degree, double a, double b );

// number of tensor interpolation points (degree+1)^3
inline std::size_t  tensor_rank ( int degree ) { return std::size_t( degree + 1 ) * ( degree + 1 ) * ( degree + 1 ); }

//
// tensor interpolation points and Lagrange polynomials of a box; the
// multi-index (v0, v1, v2) is stored at position v0 + (d+1) (v1 + (d+1) v2)
//
class tensor_grid
{
public:
    tensor_grid () = default;
    tensor_grid ( int degree, const axis_box & box );

    int               degree () const { return _degree; }
    std::size_t       size   () const { return tensor_rank( _degree ); }
    const axis_box &  box    () const { return _box; }

    std::array< int, 3 >  multi_index ( std::size_t nu ) const;
    vec3                  point       ( std::size_t nu ) const;

    // 1-D nodes along an axis
    const std::vector< double > &  nodes ( int axis ) const { return _nodes[axis]; }

    double  lagrange ( std::size_t nu, const vec3 & x ) const;

    // all Lagrange values at x, out.size() == size()
    void    lagrange_all ( const vec3 & x, std::span< double > out ) const;

    // all directional derivatives <grad L_nu(x), direction>
    void    derivative_all ( const vec3 & x, const vec3 & direction, std::span< double > out ) const;

    tensor_grid  shifted ( const vec3 & m ) const;

private:
    // 1-D Lagrange values (and optionally derivatives) on one axis
    void    axis_values ( int axis, double x, double * val, double * der ) const;

private:
    int                                   _degree = 0;
    axis_box                              _box;
    std::array< std::vector< double >, 3 >  _nodes;
    std::vector< double >                 _weights;   // barycentric weights, affine invariant
};

}// namespace tih2

#endif // TIH2_INTERPOLATION_HH
