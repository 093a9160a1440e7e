#pragma once

// Matrix text files and the on-disk cache of equivalence classes.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "schur/equivalence.hpp"
#include "schur/error.hpp"
#include "schur/matrix.hpp"

namespace schur {

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      if (pos < text.size()) lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  for (auto& l : lines)
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  return lines;
}

inline bool all_sign_chars(std::string_view tok) {
  return !tok.empty() && tok.find_first_not_of("+-") == std::string_view::npos;
}

}  // namespace detail

/// Parses whitespace-separated rows of decimal entries. `+` and `-` stand
/// for 1 and -1 and may be run together (`++-`); blank lines and text after
/// `#` are ignored. Errors name the offending line.
inline DenseMatrix parse_matrix_text(std::string_view text, const std::string& source = "input") {
  std::vector<std::vector<double>> rows;
  const auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<double> row;
    std::size_t p = 0;
    while (p < line.size()) {
      while (p < line.size() && (line[p] == ' ' || line[p] == '\t')) ++p;
      if (p >= line.size()) break;
      std::size_t q = p;
      while (q < line.size() && line[q] != ' ' && line[q] != '\t') ++q;
      const std::string_view tok = line.substr(p, q - p);
      p = q;
      if (detail::all_sign_chars(tok)) {
        for (char c : tok) row.push_back(c == '+' ? 1.0 : -1.0);
        continue;
      }
      double v = 0.0;
      const char* first = tok.data();
      if (*first == '+') ++first;  // from_chars rejects a leading plus
      const auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
        fail(ErrorKind::parse_error,
             source + ":" + std::to_string(ln + 1) + ": invalid entry '" + std::string(tok) + "'");
      row.push_back(v);
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size())
      fail(ErrorKind::parse_error, source + ":" + std::to_string(ln + 1) + ": row has " +
                                       std::to_string(row.size()) + " entries, expected " +
                                       std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorKind::parse_error, source + ": no matrix entries found");
  DenseMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io_error, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorKind::io_error, "error reading " + path.string());
  return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  // write to a sibling and rename, so readers never see a partial file
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io_error, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) fail(ErrorKind::io_error, "error writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorKind::io_error, "cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

inline DenseMatrix read_matrix_file(const std::filesystem::path& path) {
  return parse_matrix_text(read_text_file(path), path.string());
}

// ---------------------------------------------------------------------------
// Class cache: header `QN-CLASSES v1 n=<n> count=<k>`, then k blocks of n
// lines of `+`/`-`, blocks separated by one blank line, LF endings.

inline std::string format_class_cache(const EquivalenceClassSet& set) {
  std::string out = "QN-CLASSES v1 n=" + std::to_string(set.n) +
                    " count=" + std::to_string(set.representatives.size()) + "\n";
  for (std::size_t b = 0; b < set.representatives.size(); ++b) {
    if (b > 0) out += "\n";
    for (const auto& row : set.representatives[b].matrix.to_strings()) out += row + "\n";
  }
  return out;
}

/// Parses and validates a cache: header, block shapes, count, and that
/// every block is a canonical form listed in increasing order.
inline EquivalenceClassSet parse_class_cache(std::string_view text, const std::string& source = "cache") {
  const auto lines = detail::split_lines(text);
  auto bad = [&](std::size_t ln, const std::string& what) -> void {
    fail(ErrorKind::parse_error, source + ":" + std::to_string(ln) + ": " + what);
  };
  if (lines.empty()) bad(1, "empty cache file");
  unsigned n = 0;
  std::size_t count = 0;
  {
    std::istringstream hs{std::string(lines[0])};
    std::string magic, version, nfield, cfield, extra;
    hs >> magic >> version >> nfield >> cfield;
    if (magic != "QN-CLASSES" || version != "v1" || nfield.rfind("n=", 0) != 0 ||
        cfield.rfind("count=", 0) != 0 || (hs >> extra))
      bad(1, "bad header, expected 'QN-CLASSES v1 n=<n> count=<k>'");
    try {
      n = static_cast<unsigned>(std::stoul(nfield.substr(2)));
      count = std::stoul(cfield.substr(6));
    } catch (const std::exception&) {
      bad(1, "bad header numbers");
    }
  }
  if (n < 1 || n > kMaxCanonicalOrder) bad(1, "unsupported n in header");

  EquivalenceClassSet set;
  set.n = n;
  std::size_t ln = 1;
  for (std::size_t b = 0; b < count; ++b) {
    if (b > 0) {
      if (ln >= lines.size() || !lines[ln].empty()) bad(ln + 1, "expected a blank line between blocks");
      ++ln;
    }
    std::vector<std::int8_t> d;
    for (std::size_t i = 0; i < n; ++i, ++ln) {
      if (ln >= lines.size()) bad(ln + 1, "file ends inside block " + std::to_string(b + 1));
      const auto row = lines[ln];
      if (row.size() != n || !detail::all_sign_chars(row))
        bad(ln + 1, "expected " + std::to_string(n) + " characters from {+,-}");
      for (char c : row) d.push_back(c == '+' ? 1 : -1);
    }
    SignMatrix m(n, std::move(d));
    auto form = canonical_form(m);
    if (!(form.matrix == m)) bad(ln, "block " + std::to_string(b + 1) + " is not a canonical form");
    if (!set.representatives.empty() && !(set.representatives.back().matrix < m))
      bad(ln, "blocks are not in strictly increasing order");
    set.representatives.push_back(std::move(form));
  }
  if (ln != lines.size()) bad(ln + 1, "trailing content after " + std::to_string(count) + " blocks");
  set.generation_method = GenerationMethod::recursive_extension;
  return set;
}

inline std::filesystem::path class_cache_path(const std::filesystem::path& dir, std::size_t n) {
  return dir / ("classes-n" + std::to_string(n) + ".txt");
}

struct CachedClasses {
  const EquivalenceClassSet* set = nullptr;
  bool cache_hit = false;
  std::filesystem::path path;
};

/// Class set for n through a cache directory: a present cache must parse
/// and match the known count (otherwise io-error, the file is left alone);
/// a missing one is computed and written.
inline CachedClasses load_or_enumerate_classes(std::size_t n, const std::filesystem::path& dir) {
  require(n >= 1, ErrorKind::invalid_input, "n must be positive");
  if (n > kMaxEnumerationOrder)
    fail(ErrorKind::unsupported_size,
         "class enumeration is supported for 1 <= n <= " + std::to_string(kMaxEnumerationOrder));
  CachedClasses out;
  out.path = class_cache_path(dir, n);
  if (std::filesystem::exists(out.path)) {
    EquivalenceClassSet set;
    try {
      set = parse_class_cache(read_text_file(out.path), out.path.string());
    } catch (const Error& e) {
      fail(ErrorKind::io_error, "refusing corrupted class cache: " + std::string(e.what()));
    }
    if (set.n != n || set.representatives.size() != kKnownClassCounts[n])
      fail(ErrorKind::io_error, "refusing corrupted class cache " + out.path.string() + ": holds " +
                                    std::to_string(set.representatives.size()) + " classes for n=" +
                                    std::to_string(set.n) + ", expected " +
                                    std::to_string(kKnownClassCounts[n]) + " for n=" + std::to_string(n));
    out.set = &adopt_classes(std::move(set));
    out.cache_hit = true;
    return out;
  }
  out.set = &enumerate_classes(n);
  write_text_file(out.path, format_class_cache(*out.set));
  return out;
}

}  // namespace schur
