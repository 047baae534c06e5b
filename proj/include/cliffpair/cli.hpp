// Command-line driver and literal parsing.
#ifndef CLIFFPAIR_CLI_HPP
#define CLIFFPAIR_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cliffpair/quadforms.hpp"

namespace cliffpair {

/// Thrown on malformed input; the driver maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Top-level items of "[x, [y, z], w]" (brackets kept on nested items).
std::vector<std::string> split_list(std::string_view text);
/// "[[..],[..]]" with n rows of n entries, a flat list of n^2 entries (row-major), or "identity:n".
Mat parse_matrix(Field f, std::string_view text);
/// blocks=[[a1,b1],...] or an upper-triangular gram=[[...]] (exactly one given; the key prefix is optional).
QForm parse_form(Field f, std::optional<std::string> blocks, std::optional<std::string> gram);
std::string matrix_literal(const Mat& m);

/// Exit codes: 0 all checks pass, 1 a verified property failed, 2 invalid input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cliffpair

#endif
