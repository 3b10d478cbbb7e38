#include "srflp/instance.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include "srflp/rng.hpp"

namespace srflp {

namespace {

// Splits a line into integer tokens; reports the 1-based column (token index)
// of the first malformed token.
std::vector<std::int64_t> parse_int_line(const std::string& line, int line_no) {
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  int col = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    ++col;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::string tok = line.substr(start, i - start);
    try {
      std::size_t used = 0;
      std::int64_t v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError(line_no, col, "malformed token '" + tok + "'");
    }
  }
  return out;
}

bool read_logical_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
    if (!blank) return true;
  }
  return false;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  std::string line;
  int line_no = 0;

  if (!read_logical_line(in, line, line_no))
    throw ParseError(1, 1, "missing facility count");
  auto head = parse_int_line(line, line_no);
  if (head.size() != 1)
    throw ParseError(line_no, 1, "expected a single facility count, got " +
                                     std::to_string(head.size()) + " values");
  if (head[0] < 2)
    throw ParseError(line_no, 1, "facility count must be at least 2");
  const int n = static_cast<int>(head[0]);

  Instance inst;
  inst.n = n;

  if (!read_logical_line(in, line, line_no))
    throw ParseError(line_no + 1, 1, "missing length vector");
  inst.lengths = parse_int_line(line, line_no);
  if (static_cast<int>(inst.lengths.size()) != n)
    throw ParseError(line_no, 1, "expected " + std::to_string(n) + " lengths, got " +
                                     std::to_string(inst.lengths.size()));
  for (int i = 0; i < n; ++i)
    if (inst.lengths[i] < 0)
      throw ParseError(line_no, i + 1, "negative length");

  std::vector<std::vector<std::int64_t>> rows;
  rows.reserve(n);
  for (int r = 0; r < n; ++r) {
    if (!read_logical_line(in, line, line_no))
      throw ParseError(line_no + 1, 1, "missing weight matrix row " + std::to_string(r + 1));
    auto row = parse_int_line(line, line_no);
    if (static_cast<int>(row.size()) != n)
      throw ParseError(line_no, 1, "weight row " + std::to_string(r + 1) + " has " +
                                       std::to_string(row.size()) + " entries, expected " +
                                       std::to_string(n));
    for (int c = 0; c < n; ++c)
      if (row[c] < 0) throw ParseError(line_no, c + 1, "negative weight");
    rows.push_back(std::move(row));
  }
  if (read_logical_line(in, line, line_no))
    throw ParseError(line_no, 1, "unexpected trailing content");

  // Upper triangle is authoritative; the lower triangle must agree. The
  // matrix rows start on line 3 (after count and lengths).
  inst.weights.assign(static_cast<std::size_t>(n) * n, 0);
  const int matrix_first_line = line_no - n + 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rows[j][i] != rows[i][j])
        throw ParseError(matrix_first_line + j, i + 1,
                         "asymmetric weight: entry (" + std::to_string(j + 1) + "," +
                             std::to_string(i + 1) + ") = " + std::to_string(rows[j][i]) +
                             " does not match upper-triangle value " +
                             std::to_string(rows[i][j]));
      inst.weight_ref(i, j) = rows[i][j];
      inst.weight_ref(j, i) = rows[i][j];
    }
  }
  return inst;
}

Instance parse_instance_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open instance file: " + path);
  return parse_instance(f);
}

std::string render_instance(const Instance& inst) {
  std::ostringstream os;
  os << inst.n << '\n';
  for (int i = 0; i < inst.n; ++i) os << inst.lengths[i] << (i + 1 < inst.n ? ' ' : '\n');
  for (int i = 0; i < inst.n; ++i)
    for (int j = 0; j < inst.n; ++j) os << inst.weight(i, j) << (j + 1 < inst.n ? ' ' : '\n');
  return os.str();
}

std::vector<Violation> validate(const Instance& inst) {
  std::vector<Violation> out;
  const int n = inst.n;
  if (n < 2) out.push_back({"facility count must be at least 2"});
  if (static_cast<int>(inst.lengths.size()) != n)
    out.push_back({"length vector has " + std::to_string(inst.lengths.size()) +
                   " entries, expected " + std::to_string(n)});
  if (inst.weights.size() != static_cast<std::size_t>(n) * n)
    out.push_back({"weight matrix has " + std::to_string(inst.weights.size()) +
                   " entries, expected " + std::to_string(static_cast<std::size_t>(n) * n)});
  if (!out.empty()) return out;

  for (int i = 0; i < n; ++i)
    if (inst.lengths[i] < 0)
      out.push_back({"negative length for facility " + std::to_string(i + 1)});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (inst.weight(i, j) < 0)
        out.push_back({"negative weight at (" + std::to_string(i + 1) + "," +
                       std::to_string(j + 1) + ")"});
      if (j > i && inst.weight(i, j) != inst.weight(j, i))
        out.push_back({"asymmetric weights at (" + std::to_string(i + 1) + "," +
                       std::to_string(j + 1) + ")"});
    }
  }
  return out;
}

Instance generate_random_instance(int n, std::int64_t len_lo, std::int64_t len_hi,
                                  std::int64_t w_lo, std::int64_t w_hi, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (len_lo < 0 || len_lo > len_hi) throw std::invalid_argument("invalid length range");
  if (w_lo < 0 || w_lo > w_hi) throw std::invalid_argument("invalid weight range");

  Rng rng(Rng::mix(seed));
  Instance inst;
  inst.n = n;
  inst.lengths.resize(n);
  for (int i = 0; i < n; ++i) inst.lengths[i] = rng.next_int(len_lo, len_hi);
  inst.weights.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::int64_t w = rng.next_int(w_lo, w_hi);
      inst.weight_ref(i, j) = w;
      inst.weight_ref(j, i) = w;
    }
  }
  return inst;
}

}  // namespace srflp
