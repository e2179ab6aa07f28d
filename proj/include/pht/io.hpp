#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pht/complex.hpp"

namespace pht::io {

// Malformed input; `line` is 1-based when known, 0 otherwise.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { off, json };

// Picks a format from the file extension (.off / .json).
Format format_from_path(const std::filesystem::path& path);

// OFF: vertices plus polygonal faces (fan-triangulated); edges and vertices
// are inferred. OFF coordinates are 3D; `dimension` 2 drops z (must be 0).
ComplexPtr parse_off(std::string_view text, int dimension = 3);
std::string write_off(const EmbeddedComplex& complex);

// JSON schema:
//   {"dimension": d, "vertices": [[x, y(, z)], ...],
//    "simplices": [[[i], ...], [[i, j], ...], [[i, j, k], ...], ...]}
ComplexPtr parse_complex_json(std::string_view text);
std::string write_complex_json(const EmbeddedComplex& complex);

// Cover schema: {"cover": [{"simplices": [[i, j, k], [i], ...]}, ...]}.
// Each element is the face closure of its listed simplices.
Cover parse_cover_json(std::string_view text, const ComplexPtr& parent);
std::string write_cover_json(const Cover& cover);

// File helpers; I/O failures raise IoError, syntax errors ParseError,
// closure violations ComplexError.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

ComplexPtr load(const std::filesystem::path& path, Format format, int dimension = 3);
ComplexPtr load(const std::filesystem::path& path);
void save(const std::filesystem::path& path, const EmbeddedComplex& complex, Format format);
Cover load_cover(const std::filesystem::path& path, const ComplexPtr& parent);

}  // namespace pht::io
