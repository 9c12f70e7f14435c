#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lfp/gamma.hpp"
#include "lfp/reduction.hpp"

namespace lfp {

// Record streams. Text records are tab-separated, one per line; the
// json-lines form carries the same fields as one JSON object per line.
//
//   step  <from> <path> <rule> <dir> <to>
//
// <path> is a comma-separated token list (fun, arg, body) or "-" for the
// root; <rule> is beta | eta | fix; <dir> is fwd | bwd. from/to are in
// reading order, so a bwd record asserts <to> -> <from> by <rule> at <path>.

enum class RecordFormat { Text, JsonLines };

class RecordError : public std::runtime_error {
 public:
  RecordError(const std::string& what, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string path_to_text(const Path& p);
Path path_from_text(std::string_view s);

std::string render_step(const ConversionStep& cs, RecordFormat fmt);

// Normalization trace: header, start term, step records, result line.
std::string render_trace(const Term& start, const NormalizeResult& result, const RuleSet& rules, RecordFormat fmt);

std::string render_conversion(const std::string& section, const Conversion& c, RecordFormat fmt);

std::string render_certificate(const LeastFixpointCertificate& cert, RecordFormat fmt);
// Accepts either format (detected from the first record).
LeastFixpointCertificate read_certificate(std::string_view text);

// Diagnostic dump of the tracked terms M_0..M_n with their descriptor table.
std::string render_lift_dump(const LiftResult& result);

}  // namespace lfp
