#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gevo {

using NodeId = std::string;

// Sorted, duplicate-free member list. All set operations in the library
// assume this normal form.
using NodeSet = std::vector<NodeId>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

NodeSet normalized(NodeSet s);
bool is_normalized(const NodeSet& s);
std::size_t intersection_size(const NodeSet& a, const NodeSet& b);
NodeSet set_union(const NodeSet& a, const NodeSet& b);
double jaccard(const NodeSet& a, const NodeSet& b);

// Shortest decimal text that round-trips the double.
std::string format_double(double v);

std::vector<std::string_view> split(std::string_view s, char delim);
std::string_view trim(std::string_view s);

}  // namespace gevo
