#ifndef SRFLP_INSTANCE_HPP
#define SRFLP_INSTANCE_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace srflp {

// A problem instance: n facilities with nonnegative integer lengths and a
// symmetric nonnegative weight matrix with zero diagonal. Immutable after
// construction and safe to share across workers.
struct Instance {
  int n = 0;
  std::vector<std::int64_t> lengths;  // size n
  std::vector<std::int64_t> weights;  // n*n row-major

  std::int64_t weight(int i, int j) const { return weights[static_cast<std::size_t>(i) * n + j]; }
  std::int64_t& weight_ref(int i, int j) { return weights[static_cast<std::size_t>(i) * n + j]; }

  bool operator==(const Instance&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// File format:
//   line 1: n
//   line 2: n lengths
//   next n lines: weight matrix rows
// Whitespace-separated integers, LF or CRLF. The upper triangle is
// authoritative; lower-triangle entries must match it and diagonal entries
// are silently zeroed.
Instance parse_instance(std::istream& in);
Instance parse_instance_file(const std::string& path);
std::string render_instance(const Instance& inst);

struct Violation {
  std::string what;
};

// Empty result iff all instance invariants hold. Violations are data, not
// exceptions.
std::vector<Violation> validate(const Instance& inst);

// Deterministic for a fixed seed; produces a symmetric matrix with zero
// diagonal. Throws std::invalid_argument on bad ranges or n < 2.
Instance generate_random_instance(int n, std::int64_t len_lo, std::int64_t len_hi,
                                  std::int64_t w_lo, std::int64_t w_hi, std::uint64_t seed);

}  // namespace srflp

#endif  // SRFLP_INSTANCE_HPP
