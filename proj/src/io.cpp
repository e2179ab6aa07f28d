#include "pht/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace pht::io {

using nlohmann::json;

Format format_from_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".off") return Format::off;
  if (ext == ".json") return Format::json;
  throw std::invalid_argument("unknown complex format for " + path.string());
}

namespace {

// Line-oriented tokenizer that strips '#' comments and tracks line numbers.
class OffReader {
 public:
  explicit OffReader(std::string_view text) : text_(text) {}

  // Next non-empty line split into tokens; false at end of input.
  bool next_line(std::vector<std::string_view>& tokens) {
    tokens.clear();
    while (pos_ < text_.size()) {
      auto end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      auto line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
      }
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::size_t line() const { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

template <class T>
T parse_number(std::string_view tok, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("malformed number '" + std::string(tok) + "'", line);
  }
  return value;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ComplexPtr parse_off(std::string_view text, int dimension) {
  OffReader r(text);
  std::vector<std::string_view> tok;
  if (!r.next_line(tok)) throw ParseError("empty OFF input", r.line());
  std::size_t counts_at = 0;
  if (tok[0] == "OFF") {
    counts_at = 1;
  } else if (tok[0].starts_with("OFF")) {
    throw ParseError("unsupported OFF variant '" + std::string(tok[0]) + "'", r.line());
  } else {
    throw ParseError("missing OFF header", r.line());
  }
  if (tok.size() == counts_at) {
    if (!r.next_line(tok)) throw ParseError("missing OFF counts", r.line());
  } else {
    tok.erase(tok.begin(), tok.begin() + static_cast<long>(counts_at));
  }
  if (tok.size() < 2) throw ParseError("expected vertex and face counts", r.line());
  const auto nv = parse_number<std::size_t>(tok[0], r.line());
  const auto nf = parse_number<std::size_t>(tok[1], r.line());

  ComplexData data;
  data.dimension = dimension;
  data.vertices.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (!r.next_line(tok)) throw ParseError("truncated vertex list", r.line());
    if (tok.size() < 3) throw ParseError("vertex needs 3 coordinates", r.line());
    Point p{parse_number<double>(tok[0], r.line()), parse_number<double>(tok[1], r.line()),
            parse_number<double>(tok[2], r.line())};
    if (dimension == 2 && p[2] != 0.0) {
      throw ParseError("nonzero z coordinate in a 2D OFF file", r.line());
    }
    data.vertices.push_back(p);
  }

  std::set<Simplex> edges;
  std::vector<Simplex> triangles;
  std::set<Simplex> seen_triangles;
  for (std::size_t f = 0; f < nf; ++f) {
    if (!r.next_line(tok)) throw ParseError("truncated face list", r.line());
    const auto k = parse_number<std::size_t>(tok[0], r.line());
    if (k == 0 || tok.size() < k + 1) throw ParseError("face has too few indices", r.line());
    std::vector<std::uint32_t> idx;
    for (std::size_t i = 0; i < k; ++i) {
      auto v = parse_number<std::uint32_t>(tok[i + 1], r.line());
      if (v >= nv) throw ParseError("face index out of range", r.line());
      idx.push_back(v);
    }
    if (k == 1) continue;  // every OFF vertex is already a 0-simplex
    if (k == 2) {
      Simplex e{std::min(idx[0], idx[1]), std::max(idx[0], idx[1])};
      if (e[0] == e[1]) throw ParseError("degenerate edge", r.line());
      edges.insert(e);
      continue;
    }
    // Fan triangulation of polygonal faces.
    for (std::size_t i = 1; i + 1 < k; ++i) {
      Simplex t{idx[0], idx[i], idx[i + 1]};
      std::sort(t.begin(), t.end());
      if (t[0] == t[1] || t[1] == t[2]) throw ParseError("degenerate face", r.line());
      if (!seen_triangles.insert(t).second) continue;
      triangles.push_back(t);
      edges.insert({t[0], t[1]});
      edges.insert({t[0], t[2]});
      edges.insert({t[1], t[2]});
    }
  }

  data.simplices.resize(3);
  for (std::uint32_t i = 0; i < nv; ++i) data.simplices[0].push_back({i});
  data.simplices[1].assign(edges.begin(), edges.end());
  data.simplices[2] = std::move(triangles);
  return EmbeddedComplex::build(std::move(data));
}

std::string write_off(const EmbeddedComplex& complex) {
  if (complex.top_dimension() > 2) throw std::invalid_argument("OFF cannot store 3-simplices");
  // Maximal edges and vertices are written as 2- and 1-index faces.
  std::vector<std::size_t> faces;
  for (std::size_t id = 0; id < complex.num_simplices(); ++id) {
    if (complex.dim(id) == 2 || complex.cofacets(id).empty()) faces.push_back(id);
  }
  std::stable_sort(faces.begin(), faces.end(),
                   [&](auto a, auto b) { return complex.dim(a) > complex.dim(b); });
  std::ostringstream out;
  out << "OFF\n" << complex.num_points() << ' ' << faces.size() << " 0\n";
  for (std::size_t i = 0; i < complex.num_points(); ++i) {
    const auto& p = complex.point(i);
    out << format_double(p[0]) << ' ' << format_double(p[1]) << ' ' << format_double(p[2]) << '\n';
  }
  for (auto id : faces) {
    auto v = complex.vertices_of(id);
    out << v.size();
    for (auto i : v) out << ' ' << i;
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports a byte offset; convert it to a line number.
    const auto byte = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
    throw ParseError(std::string("invalid JSON at byte ") + std::to_string(e.byte), line);
  }
}

Simplex to_simplex(const json& j) {
  if (!j.is_array()) throw ParseError("simplex must be an array of vertex indices", 0);
  Simplex s;
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) throw ParseError("vertex index must be a non-negative integer", 0);
    s.push_back(v.get<std::uint32_t>());
  }
  return s;
}

}  // namespace

ComplexPtr parse_complex_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("complex JSON must be an object", 0);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "dimension" && it.key() != "vertices" && it.key() != "simplices") {
      throw ParseError("unknown field '" + it.key() + "'", 0);
    }
  }
  if (!j.contains("dimension") || !j["dimension"].is_number_integer()) {
    throw ParseError("missing integer field 'dimension'", 0);
  }
  ComplexData data;
  data.dimension = j["dimension"].get<int>();
  if (data.dimension != 2 && data.dimension != 3) throw ParseError("dimension must be 2 or 3", 0);
  const auto d = static_cast<std::size_t>(data.dimension);
  if (!j.contains("vertices") || !j["vertices"].is_array()) {
    throw ParseError("missing array field 'vertices'", 0);
  }
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != d) {
      throw ParseError("vertex must have " + std::to_string(d) + " coordinates", 0);
    }
    Point p{};
    for (std::size_t i = 0; i < d; ++i) {
      if (!v[i].is_number()) throw ParseError("coordinate must be a number", 0);
      p[i] = v[i].get<double>();
    }
    data.vertices.push_back(p);
  }
  if (j.contains("simplices")) {
    if (!j["simplices"].is_array()) throw ParseError("'simplices' must be an array", 0);
    for (const auto& level : j["simplices"]) {
      if (!level.is_array()) throw ParseError("'simplices' entries must be arrays", 0);
      auto& out = data.simplices.emplace_back();
      for (const auto& s : level) out.push_back(to_simplex(s));
    }
  }
  return EmbeddedComplex::build(std::move(data));
}

std::string write_complex_json(const EmbeddedComplex& complex) {
  nlohmann::ordered_json j;
  j["dimension"] = complex.dimension();
  auto verts = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < complex.num_points(); ++i) {
    auto p = nlohmann::ordered_json::array();
    for (int k = 0; k < complex.dimension(); ++k) p.push_back(complex.point(i)[static_cast<std::size_t>(k)]);
    verts.push_back(std::move(p));
  }
  j["vertices"] = std::move(verts);
  auto simplices = nlohmann::ordered_json::array();
  for (const auto& level : complex.data().simplices) simplices.push_back(level);
  j["simplices"] = std::move(simplices);
  return j.dump() + "\n";
}

Cover parse_cover_json(std::string_view text, const ComplexPtr& parent) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("cover") || !j["cover"].is_array()) {
    throw ParseError("cover JSON must be an object with array field 'cover'", 0);
  }
  std::vector<Subcomplex> elements;
  for (const auto& e : j["cover"]) {
    if (!e.is_object() || !e.contains("simplices") || !e["simplices"].is_array()) {
      throw ParseError("cover element must be an object with array field 'simplices'", 0);
    }
    std::vector<std::size_t> ids;
    for (const auto& s : e["simplices"]) {
      auto simplex = to_simplex(s);
      auto id = parent->find(simplex);
      if (!id) throw ComplexError("cover simplex " + format_simplex(simplex) + " not in complex");
      ids.push_back(*id);
    }
    elements.push_back(Subcomplex::closure_of(parent, ids));
  }
  return Cover::make(parent, std::move(elements));
}

std::string write_cover_json(const Cover& cover) {
  nlohmann::ordered_json j;
  auto elems = nlohmann::ordered_json::array();
  const auto& c = *cover.parent();
  for (const auto& e : cover.elements()) {
    auto list = nlohmann::ordered_json::array();
    for (auto id : e.maximal_simplices()) {
      auto v = c.vertices_of(id);
      list.push_back(std::vector<std::uint32_t>(v.begin(), v.end()));
    }
    nlohmann::ordered_json el;
    el["simplices"] = std::move(list);
    elems.push_back(std::move(el));
  }
  j["cover"] = std::move(elems);
  return j.dump() + "\n";
}

// ---------------------------------------------------------------------------

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

ComplexPtr load(const std::filesystem::path& path, Format format, int dimension) {
  const auto text = read_file(path);
  return format == Format::off ? parse_off(text, dimension) : parse_complex_json(text);
}

ComplexPtr load(const std::filesystem::path& path) { return load(path, format_from_path(path)); }

void save(const std::filesystem::path& path, const EmbeddedComplex& complex, Format format) {
  write_file(path, format == Format::off ? write_off(complex) : write_complex_json(complex));
}

Cover load_cover(const std::filesystem::path& path, const ComplexPtr& parent) {
  return parse_cover_json(read_file(path), parent);
}

}  // namespace pht::io
