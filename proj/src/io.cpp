#include "netlsd/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "netlsd/errors.hpp"
#include "netlsd/time_grid.hpp"

namespace netlsd {

std::string format_value(double v) {
  // Shortest decimal form that parses back to the same double.
  char buf[40];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_signature_file(std::ostream& out, const SignatureCollection& coll,
                          const std::vector<std::string>& extra_comments) {
  const SignatureMeta& m = coll.meta;
  out << "#netlsd v1 kernel=" << to_string(m.kernel) << " norm=" << to_string(m.normalization)
      << " grid=" << m.grid.count << ',' << format_value(m.grid.t_min) << ','
      << format_value(m.grid.t_max) << ',' << to_string(m.grid.spacing) << '\n';
  for (const std::string& c : extra_comments) out << '#' << c << '\n';
  for (std::size_t i = 0; i < coll.size(); ++i) {
    const std::string& id = coll.ids[i];
    if (id.find(',') != std::string::npos || id.find('\n') != std::string::npos)
      throw ArgumentError("graph id '" + id + "' cannot be stored in a CSV field");
    out << id;
    const Eigen::ArrayXd& row = coll.rows[i];
    for (Eigen::Index j = 0; j < row.size(); ++j) out << ',' << format_value(row[j]);
    out << '\n';
  }
  if (!out) throw IoError("failed while writing signature data");
}

void write_signature_file(const std::string& path, const SignatureCollection& coll,
                          const std::vector<std::string>& extra_comments) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_signature_file(out, coll, extra_comments);
}

namespace {

// "key=value" -> value, or a parse error naming the key.
std::string_view expect_field(std::string_view token, std::string_view key, int line_no) {
  if (token.size() > key.size() && token.substr(0, key.size()) == key && token[key.size()] == '=')
    return token.substr(key.size() + 1);
  throw ParseError("expected '" + std::string(key) + "=...' in signature header", line_no);
}

double parse_double(std::string_view s, int line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("malformed number '" + std::string(s) + "'", line_no);
  }
}

SignatureMeta parse_header(const std::string& line, int line_no) {
  std::istringstream fields(line);
  std::string magic, version, kernel, norm, grid;
  fields >> magic >> version >> kernel >> norm >> grid;
  if (fields.fail() || magic != "#netlsd")
    throw ParseError("not a signature file (missing #netlsd header)", line_no);
  if (version != "v1") throw ParseError("unsupported signature file version '" + version + "'", line_no);

  SignatureMeta meta;
  try {
    meta.kernel = kernel_from_string(expect_field(kernel, "kernel", line_no));
    meta.normalization = normalization_from_string(expect_field(norm, "norm", line_no));
  } catch (const ArgumentError& e) {
    throw ParseError(e.what(), line_no);
  }

  const std::string_view spec = expect_field(grid, "grid", line_no);
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= spec.size(); ++i) {
    if (i == spec.size() || spec[i] == ',') {
      parts.push_back(spec.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 4)
    throw ParseError("grid spec must be count,t_min,t_max,spacing", line_no);
  int count = 0;
  try {
    count = std::stoi(std::string(parts[0]));
  } catch (const std::exception&) {
    throw ParseError("malformed grid count '" + std::string(parts[0]) + "'", line_no);
  }
  const double t_min = parse_double(parts[1], line_no);
  const double t_max = parse_double(parts[2], line_no);
  GridSpacing spacing;
  try {
    spacing = grid_spacing_from_string(parts[3]);
  } catch (const ArgumentError& e) {
    throw ParseError(e.what(), line_no);
  }
  try {
    meta.grid = make_time_grid(count, t_min, t_max, spacing);
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("invalid grid spec: ") + e.what(), line_no);
  }
  return meta;
}

}  // namespace

SignatureCollection read_signature_file(std::istream& in) {
  std::string line;
  int line_no = 0;
  // First non-blank line must be the header.
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    break;
  }
  if (line.empty()) throw ParseError("signature file is empty", line_no);

  SignatureCollection coll;
  coll.meta = parse_header(line, line_no);

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> cells;
    const std::string_view row(line);
    std::size_t start = 0;
    for (std::size_t i = 0; i <= row.size(); ++i) {
      if (i == row.size() || row[i] == ',') {
        cells.push_back(row.substr(start, i - start));
        start = i + 1;
      }
    }
    if (cells.size() != static_cast<std::size_t>(coll.meta.grid.count) + 1)
      throw ParseError("expected " + std::to_string(coll.meta.grid.count) + " values for '" +
                           std::string(cells.front()) + "', got " +
                           std::to_string(cells.size() - 1),
                       line_no);
    if (cells.front().empty()) throw ParseError("missing graph id", line_no);

    Eigen::ArrayXd values(coll.meta.grid.count);
    for (std::size_t i = 1; i < cells.size(); ++i)
      values[static_cast<Eigen::Index>(i - 1)] = parse_double(cells[i], line_no);
    try {
      add_signature(coll, std::string(cells.front()), std::move(values));
    } catch (const ArgumentError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return coll;
}

SignatureCollection read_signature_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_signature_file(in);
}

std::vector<ManifestEntry> read_manifest(std::istream& in) {
  std::vector<ManifestEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string id;
    if (!(fields >> id) || id.front() == '#') continue;

    ManifestEntry entry;
    entry.id = std::move(id);
    if (!(fields >> entry.path))
      throw ParseError("manifest line needs `<graph-id> <path> [label]`", line_no);
    std::string label;
    if (fields >> label) {
      try {
        std::size_t used = 0;
        entry.label = std::stoi(label, &used);
        if (used != label.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError("malformed label '" + label + "'", line_no);
      }
      std::string extra;
      if (fields >> extra) throw ParseError("unexpected trailing token '" + extra + "'", line_no);
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<ManifestEntry> read_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_manifest(in);
}

}  // namespace netlsd
