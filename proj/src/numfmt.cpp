#include "stallnet/numfmt.hpp"

#include <charconv>
#include <system_error>

#include "stallnet/error.hpp"

namespace stallnet {

void append_double(std::string& out, double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, res.ptr);
}

std::string format_double(double value) {
    std::string s;
    append_double(s, value);
    return s;
}

double parse_double(const std::string& token) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ValidationError("not a number: '" + token + "'");
    }
    return value;
}

}  // namespace stallnet
