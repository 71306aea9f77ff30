#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "netlsd/compare.hpp"

namespace netlsd {

/// Signature CSV layout:
///   #netlsd v1 kernel=heat norm=empty grid=250,0.01,100,log
///   #... further comment lines are skipped by readers ...
///   <graph-id>,<v1>,...,<vcount>
/// Values are printed with 17 significant digits so doubles survive the
/// round trip bit-exactly.
void write_signature_file(std::ostream& out, const SignatureCollection& coll,
                          const std::vector<std::string>& extra_comments = {});
void write_signature_file(const std::string& path, const SignatureCollection& coll,
                          const std::vector<std::string>& extra_comments = {});

SignatureCollection read_signature_file(std::istream& in);
SignatureCollection read_signature_file(const std::string& path);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_value(double v);

struct ManifestEntry {
  std::string id;
  std::string path;
  std::optional<int> label;
};

/// Manifest layout: one graph per line, `<graph-id> <path> [label]`,
/// `#` comments and blank lines ignored.
std::vector<ManifestEntry> read_manifest(std::istream& in);
std::vector<ManifestEntry> read_manifest_file(const std::string& path);

}  // namespace netlsd
