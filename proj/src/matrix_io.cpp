#include "spca/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

namespace spca {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_double(const std::string& token, double& out) {
  const std::string t = trim(token);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_int(const std::string& token, long& out) {
  const std::string t = trim(token);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ifstream open_input(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open file for reading: " + file.string());
  return in;
}

SymMatrix finalize_dense(const std::filesystem::path& file, int d, std::vector<double> entries) {
  double scale = 0.0;
  for (double v : entries) scale = std::max(scale, std::fabs(v));
  double worst = 0.0;
  int wi = 0;
  int wj = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < i; ++j) {
      const double diff =
          std::fabs(entries[static_cast<std::size_t>(i) * d + j] -
                    entries[static_cast<std::size_t>(j) * d + i]);
      if (diff > worst) {
        worst = diff;
        wi = i;
        wj = j;
      }
    }
  }
  if (worst > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "matrix is asymmetric: |A(" << wi + 1 << "," << wj + 1 << ") - A(" << wj + 1 << ","
        << wi + 1 << ")| = " << worst;
    throw ParseError(file, 0, msg.str());
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < i; ++j) {
      const double v = 0.5 * (entries[static_cast<std::size_t>(i) * d + j] +
                              entries[static_cast<std::size_t>(j) * d + i]);
      entries[static_cast<std::size_t>(i) * d + j] = v;
      entries[static_cast<std::size_t>(j) * d + i] = v;
    }
  }
  return SymMatrix(d, std::move(entries));
}

SymMatrix read_matrix_market(const std::filesystem::path& file) {
  std::ifstream in = open_input(file);
  std::string line;
  int lineno = 0;

  if (!std::getline(in, line)) throw ParseError(file, 1, "empty file");
  ++lineno;
  {
    std::istringstream hs(line);
    std::string banner, object, fmt, field, symmetry;
    hs >> banner >> object >> fmt >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix" || fmt != "coordinate" ||
        field != "real" || symmetry != "symmetric")
      throw ParseError(file, 1,
                       "expected header '%%MatrixMarket matrix coordinate real symmetric'");
  }

  long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '%') continue;
    std::istringstream ss(t);
    std::string a, b, c, extra;
    ss >> a >> b >> c;
    if (ss >> extra) throw ParseError(file, lineno, "size line has too many fields");
    if (!parse_int(a, rows) || !parse_int(b, cols) || !parse_int(c, nnz))
      throw ParseError(file, lineno, "malformed size line, expected 'rows cols nnz'");
    break;
  }
  if (rows < 0) throw ParseError(file, lineno, "missing size line");
  if (rows != cols) throw ParseError(file, lineno, "matrix must be square");
  if (rows < 1) throw ParseError(file, lineno, "dimension must be positive");
  if (nnz < 0) throw ParseError(file, lineno, "negative entry count");

  const int d = static_cast<int>(rows);
  std::vector<double> entries(static_cast<std::size_t>(d) * d, 0.0);
  std::vector<char> present(static_cast<std::size_t>(d) * d, 0);
  long seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '%') continue;
    std::istringstream ss(t);
    std::string a, b, c, extra;
    ss >> a >> b >> c;
    if (ss >> extra) throw ParseError(file, lineno, "entry line has too many fields");
    long i = 0, j = 0;
    double v = 0.0;
    if (!parse_int(a, i) || !parse_int(b, j) || !parse_double(c, v))
      throw ParseError(file, lineno, "malformed entry line, expected 'i j value'");
    if (i < 1 || i > d || j < 1 || j > d)
      throw ParseError(file, lineno, "entry index out of range");
    const std::size_t lo = static_cast<std::size_t>(i - 1) * d + (j - 1);
    const std::size_t hi = static_cast<std::size_t>(j - 1) * d + (i - 1);
    if (present[lo])
      throw ParseError(file, lineno, "duplicate entry for (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
    present[lo] = 1;
    present[hi] = 1;
    entries[lo] = v;
    entries[hi] = v;
    ++seen;
  }
  if (seen != nnz)
    throw ParseError(file, lineno,
                     "entry count mismatch: header says " + std::to_string(nnz) + ", found " +
                         std::to_string(seen));
  return SymMatrix(d, std::move(entries));
}

SymMatrix read_dense_csv(const std::filesystem::path& file) {
  std::ifstream in = open_input(file);
  std::string line;
  int lineno = 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto tokens = split_csv(line);
    std::vector<double> row;
    row.reserve(tokens.size());
    for (std::size_t c = 0; c < tokens.size(); ++c) {
      double v = 0.0;
      if (!parse_double(tokens[c], v))
        throw ParseError(file, lineno,
                         "cannot parse value in column " + std::to_string(c + 1));
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(file, lineno, "inconsistent column count");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(file, lineno, "empty file");
  if (rows.size() != rows.front().size())
    throw ParseError(file, lineno, "matrix must be square");
  const int d = static_cast<int>(rows.size());
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(d) * d);
  for (const auto& row : rows) entries.insert(entries.end(), row.begin(), row.end());
  return finalize_dense(file, d, std::move(entries));
}

}  // namespace

ParseError::ParseError(const std::filesystem::path& file, int line_number,
                       const std::string& message)
    : std::runtime_error(line_number > 0
                             ? file.string() + ":" + std::to_string(line_number) + ": " + message
                             : file.string() + ": " + message),
      line(line_number) {}

MatrixFormat parse_matrix_format(const std::string& name) {
  if (name == "mm" || name == "matrix-market" || name == "matrixmarket")
    return MatrixFormat::matrix_market;
  if (name == "csv" || name == "dense-csv") return MatrixFormat::dense_csv;
  throw std::invalid_argument("unknown matrix format: " + name);
}

SymMatrix read_matrix(const std::filesystem::path& file, MatrixFormat format) {
  if (!std::filesystem::exists(file)) throw IoError("no such file: " + file.string());
  return format == MatrixFormat::matrix_market ? read_matrix_market(file)
                                               : read_dense_csv(file);
}

void write_matrix(const SymMatrix& a, const std::filesystem::path& file, MatrixFormat format) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot open file for writing: " + file.string());
  const int d = a.dim();
  if (format == MatrixFormat::matrix_market) {
    long nnz = 0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j <= i; ++j)
        if (a(i, j) != 0.0) ++nnz;
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << d << ' ' << d << ' ' << nnz << '\n';
    for (int i = 0; i < d; ++i)
      for (int j = 0; j <= i; ++j)
        if (a(i, j) != 0.0)
          out << i + 1 << ' ' << j + 1 << ' ' << format_double(a(i, j)) << '\n';
  } else {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (j) out << ',';
        out << format_double(a(i, j));
      }
      out << '\n';
    }
  }
  if (!out) throw IoError("write failed: " + file.string());
}

DataMatrix read_data_csv(const std::filesystem::path& file) {
  if (!std::filesystem::exists(file)) throw IoError("no such file: " + file.string());
  std::ifstream in = open_input(file);
  std::string line;
  int lineno = 0;
  DataMatrix out;
  std::vector<double> row;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto tokens = split_csv(line);
    if (first_content_line) {
      first_content_line = false;
      bool numeric = true;
      double v = 0.0;
      for (const auto& t : tokens)
        if (!parse_double(t, v)) {
          numeric = false;
          break;
        }
      if (!numeric) {
        for (const auto& t : tokens) out.column_names.push_back(trim(t));
        out.cols = static_cast<int>(tokens.size());
        continue;
      }
    }
    if (out.cols == 0) out.cols = static_cast<int>(tokens.size());
    if (static_cast<int>(tokens.size()) != out.cols)
      throw ParseError(file, lineno, "inconsistent column count");
    row.clear();
    for (std::size_t c = 0; c < tokens.size(); ++c) {
      double v = 0.0;
      if (!parse_double(tokens[c], v))
        throw ParseError(file, lineno,
                         "cannot parse value in column " + std::to_string(c + 1));
      row.push_back(v);
    }
    out.values.insert(out.values.end(), row.begin(), row.end());
    ++out.rows;
  }
  if (out.rows == 0) throw ParseError(file, lineno, "no data rows");
  return out;
}

}  // namespace spca
