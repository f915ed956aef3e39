#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinnet/core/network.hpp"

namespace spinnet {

/// 1-based line and byte column.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class ParseErrorKind { Lexical, Syntactic, Semantic };

[[nodiscard]] std::string_view to_string(ParseErrorKind kind) noexcept;

struct ParseError {
  std::string message;
  SourceSpan span;
  ParseErrorKind kind = ParseErrorKind::Syntactic;
};

/// "line:column: kind: message"
[[nodiscard]] std::string format_error(const ParseError& e, std::string_view source_name = {});

struct ParseResult {
  std::optional<SpinNetwork> network;  // set exactly when errors is empty
  std::vector<ParseError> errors;

  [[nodiscard]] bool ok() const noexcept { return errors.empty(); }
};

/// Line-oriented format:
///   version 1              optional, before any other statement
///   edge <id> <label>
///   vertex <id> <edge> <edge> <edge>
///   # comment              also allowed after a statement
/// An edge's first appearance on a vertex line is its end 0, the second its
/// end 1; ends never claimed are free. Ids use letters, digits and _ . * ' -.
/// Every error found is reported, sorted by position.
[[nodiscard]] ParseResult parse_network(std::string_view text);

/// Edges then vertices, each sorted by id. Throws InvalidNetwork for a
/// network that does not validate or whose ids cannot be written.
[[nodiscard]] std::string serialize_network(const SpinNetwork& net);

}  // namespace spinnet
