#ifndef TIH2_ERROR_HH
#define TIH2_ERROR_HH
//
// Project     : tih2
// Module      : error
// Description : exception type shared by all modules
//

#include <stdexcept>
#include <string>

namespace tih2 {

enum class errc
{
    invalid_argument = 1,
    out_of_range,
    dimension_mismatch,
    size_limit,
    not_converged,
    io_error,
    format_error
};

class error : public std::runtime_error
{
public:
    error ( errc                code,
            const std::string & what )
            : std::runtime_error( what )
            , _code( code )
    {}

    errc code () const noexcept { return _code; }

private:
    errc  _code;
};

}// namespace tih2

#endif // TIH2_ERROR_HH
