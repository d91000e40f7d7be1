#pragma once

// JSON forms of the library types and the command-line input document.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "l2alex/degree.hpp"
#include "l2alex/error.hpp"
#include "l2alex/laurent.hpp"
#include "l2alex/torsion.hpp"
#include "l2alex/twist.hpp"

namespace l2alex {

using Json = nlohmann::json;

enum class InputErrorCode {
  MalformedJson = 10,
  InvalidSchema = 11,
  DimensionMismatch = 12,
  InvalidIndexDivisor = 13,
};

/// Input document rejected during parsing or validation. `where` is either
/// "line L, column C" for syntax errors or a JSON pointer into the document.
class DocumentError : public InputError {
 public:
  DocumentError(InputErrorCode code, std::string where, const std::string& message)
      : InputError(where.empty() ? message : where + ": " + message),
        code_(code),
        where_(std::move(where)) {}

  InputErrorCode code() const noexcept { return code_; }
  const std::string& where() const noexcept { return where_; }

 private:
  InputErrorCode code_;
  std::string where_;
};

struct InputDocument {
  std::vector<std::string> variables;
  LaurentMatrix matrix;
  CohomClass cls;
  std::vector<MaxPair> pairs;
  int index_divisor = 1;

  friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

Json to_json(const LaurentPoly& p);
Json to_json(const LaurentMatrix& a);
Json to_json(const CohomClass& c);
Json to_json(const InputDocument& doc);
Json to_json(const AsymptoteReport& r);
Json to_json(const MahlerResult& r);
Json to_json(const ConvexityReport& r);
Json to_json(const Section9Result& r);

/// Parses and validates an input document. Throws DocumentError.
InputDocument parse_input(std::string_view text);

/// Document for the `mahler` command: either {"variables": [...], "poly": [...]}
/// or a full input document, whose determinant is used.
LaurentPoly parse_poly_document(std::string_view text);

/// %.12g, with integral values printed without a fraction.
std::string format_number(double x);

/// Serializes with every floating value rounded to 12 significant digits,
/// so output is byte-stable across platforms' shortest-repr choices.
std::string dump_rounded(const Json& j);

}  // namespace l2alex
