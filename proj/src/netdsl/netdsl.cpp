#include "spinnet/netdsl/netdsl.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <set>

#include "spinnet/core/error.hpp"

namespace spinnet {
namespace {

constexpr int kMaxLabel = 100000;

bool is_id_char(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '.' ||
         c == '*' || c == '\'' || c == '-';
}

bool is_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Length of the UTF-8 sequence starting at s[0], or 1 for a stray byte.
std::size_t utf8_length(std::string_view s) {
  const auto c = static_cast<unsigned char>(s[0]);
  std::size_t n = 1;
  if (c >= 0xF0 && c <= 0xF4) n = 4;
  else if (c >= 0xE0) n = 3;
  else if (c >= 0xC2 && c <= 0xDF) n = 2;
  if (n > s.size()) return 1;
  for (std::size_t k = 1; k < n; ++k) {
    if ((static_cast<unsigned char>(s[k]) & 0xC0) != 0x80) return 1;
  }
  return n;
}

struct Token {
  std::string_view text;
  SourceSpan span;
};

struct Statement {
  std::vector<Token> tokens;
  std::size_t line = 0;

  [[nodiscard]] SourceSpan span() const {
    const SourceSpan& first = tokens.front().span;
    const SourceSpan& last = tokens.back().span;
    return SourceSpan{line, first.column, last.column + last.length - first.column};
  }
};

struct EdgeDecl {
  std::string id;
  int label = 0;
  SourceSpan span;
};

struct VertexDecl {
  std::string id;
  std::array<Token, 3> edges;
  SourceSpan span;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParseResult run() {
    lex();
    for (const Statement& s : statements_) statement(s);
    resolve();
    std::stable_sort(errors_.begin(), errors_.end(), [](const ParseError& a, const ParseError& b) {
      return std::pair(a.span.line, a.span.column) < std::pair(b.span.line, b.span.column);
    });
    ParseResult result;
    result.errors = std::move(errors_);
    if (result.errors.empty()) result.network = std::move(network_);
    return result;
  }

 private:
  void error(ParseErrorKind kind, SourceSpan span, std::string message) {
    errors_.push_back(ParseError{std::move(message), span, kind});
  }

  void lex() {
    std::string_view rest = text_;
    if (rest.starts_with("\xEF\xBB\xBF")) rest.remove_prefix(3);
    const std::size_t bom = text_.size() - rest.size();
    std::size_t line_no = 0;
    while (!rest.empty() || line_no == 0) {
      ++line_no;
      const std::size_t nl = rest.find('\n');
      std::string_view line = rest.substr(0, nl);
      rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
      if (line.ends_with('\r')) line.remove_suffix(1);
      const std::size_t offset = line_no == 1 ? bom : 0;
      lex_line(line, line_no, offset);
      if (nl == std::string_view::npos) break;
    }
  }

  void lex_line(std::string_view line, std::size_t line_no, std::size_t offset) {
    Statement st;
    st.line = line_no;
    bool bad = false;
    std::size_t i = 0;
    while (i < line.size()) {
      const char c = line[i];
      if (c == ' ' || c == '\t') {
        ++i;
        continue;
      }
      if (c == '#') break;
      const std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#') {
        const auto u = static_cast<unsigned char>(line[i]);
        if (!is_id_char(u)) {
          const std::size_t len = utf8_length(line.substr(i));
          std::string shown = u >= 0x20 && u < 0x7F ? "'" + std::string(1, line[i]) + "'"
                                                       : "byte 0x" + hex(u);
          error(ParseErrorKind::Lexical, SourceSpan{line_no, offset + i + 1, len},
                "unexpected character " + shown);
          bad = true;
          i += len;
          continue;
        }
        ++i;
      }
      st.tokens.push_back(Token{line.substr(start, i - start), SourceSpan{line_no, offset + start + 1, i - start}});
    }
    if (!bad && !st.tokens.empty()) statements_.push_back(std::move(st));
  }

  static std::string hex(unsigned char u) {
    constexpr char digits[] = "0123456789ABCDEF";
    return {digits[u >> 4], digits[u & 0xF]};
  }

  bool arity(const Statement& s, std::size_t want, const char* usage) {
    if (s.tokens.size() == want) return true;
    if (s.tokens.size() > want) {
      error(ParseErrorKind::Syntactic, s.tokens[want].span,
            "unexpected '" + std::string(s.tokens[want].text) + "'; expected " + usage);
    } else {
      error(ParseErrorKind::Syntactic, s.span(), "missing operand; expected " + std::string(usage));
    }
    return false;
  }

  void statement(const Statement& s) {
    const std::string_view kw = s.tokens.front().text;
    if (kw == "version") {
      if (!arity(s, 2, "'version 1'")) return;
      if (seen_statement_) {
        error(ParseErrorKind::Syntactic, s.span(), "version must come before any other statement");
      } else if (s.tokens[1].text != "1") {
        error(ParseErrorKind::Semantic, s.tokens[1].span, "unsupported version '" + std::string(s.tokens[1].text) + "'");
      }
      seen_statement_ = true;
      return;
    }
    seen_statement_ = true;
    if (kw == "edge") {
      if (!arity(s, 3, "'edge <id> <label>'")) return;
      const auto label = parse_label(s.tokens[2]);
      // a bad label still declares the id, so uses of it are not reported again
      if (declare(s.tokens[1])) edges_.push_back(EdgeDecl{std::string(s.tokens[1].text), label.value_or(-1), s.span()});
      return;
    }
    if (kw == "vertex") {
      if (!arity(s, 5, "'vertex <id> <edge> <edge> <edge>'")) return;
      if (declare(s.tokens[1])) {
        vertices_.push_back(VertexDecl{std::string(s.tokens[1].text), {s.tokens[2], s.tokens[3], s.tokens[4]}, s.span()});
      }
      return;
    }
    error(ParseErrorKind::Syntactic, s.tokens.front().span,
          "unknown statement '" + std::string(kw) + "'; expected edge, vertex or version");
  }

  std::optional<int> parse_label(const Token& t) {
    std::string_view digits = t.text;
    const bool negative = digits.starts_with('-') && is_digits(digits.substr(1));
    if (negative) {
      error(ParseErrorKind::Semantic, t.span, "label must be non-negative, got " + std::string(t.text));
      return std::nullopt;
    }
    if (!is_digits(digits)) {
      error(ParseErrorKind::Syntactic, t.span, "expected a non-negative integer label, got '" + std::string(t.text) + "'");
      return std::nullopt;
    }
    int value = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || end != digits.data() + digits.size() || value > kMaxLabel) {
      error(ParseErrorKind::Semantic, t.span, "label " + std::string(t.text) + " exceeds " + std::to_string(kMaxLabel));
      return std::nullopt;
    }
    return value;
  }

  bool declare(const Token& id) {
    const auto [it, inserted] = ids_.emplace(std::string(id.text), id.span);
    if (!inserted) {
      error(ParseErrorKind::Semantic, id.span,
            "duplicate id '" + std::string(id.text) + "' (first declared on line " + std::to_string(it->second.line) +
                ")");
    }
    return inserted;
  }

  void resolve() {
    std::map<std::string, std::size_t, std::less<>> edge_index;
    for (std::size_t e = 0; e < edges_.size(); ++e) edge_index.emplace(edges_[e].id, e);
    std::vector<int> uses(edges_.size(), 0);
    std::vector<Vertex> vertices;
    bool structural = !errors_.empty();
    for (const VertexDecl& v : vertices_) {
      Vertex out{v.id, {}};
      std::array<int, 3> labels{};
      bool resolved = true;
      for (std::size_t s = 0; s < 3; ++s) {
        const Token& t = v.edges[s];
        const auto it = edge_index.find(t.text);
        if (it == edge_index.end()) {
          error(ParseErrorKind::Semantic, t.span, "unknown edge '" + std::string(t.text) + "'");
          resolved = false;
          continue;
        }
        const std::size_t e = it->second;
        if (uses[e] >= 2) {
          error(ParseErrorKind::Semantic, t.span, "edge '" + std::string(t.text) + "' already has both ends attached");
          resolved = false;
          continue;
        }
        out.slots[s] = EndRef{e, uses[e]++};
        labels[s] = edges_[e].label;
      }
      if (!resolved) {
        structural = true;
        continue;
      }
      if (std::any_of(labels.begin(), labels.end(), [](int l) { return l < 0; })) continue;
      if (!vertex_admissible(labels[0], labels[1], labels[2])) {
        error(ParseErrorKind::Semantic, v.span,
              "vertex '" + v.id + "' has inadmissible labels (" + std::to_string(labels[0]) + "," +
                  std::to_string(labels[1]) + "," + std::to_string(labels[2]) + ")");
      }
      vertices.push_back(std::move(out));
    }
    if (structural || !errors_.empty()) return;

    std::vector<Edge> edges;
    for (const EdgeDecl& e : edges_) edges.push_back(Edge{e.id, SpinLabel(e.label)});
    SpinNetwork net(std::move(edges), std::move(vertices));
    for (const Violation& v : validate_network(net)) {
      const auto it = ids_.find(v.subject);
      error(ParseErrorKind::Semantic, it != ids_.end() ? it->second : SourceSpan{}, v.message);
    }
    network_ = std::move(net);
  }

  std::string_view text_;
  std::vector<Statement> statements_;
  std::vector<ParseError> errors_;
  bool seen_statement_ = false;
  std::vector<EdgeDecl> edges_;
  std::vector<VertexDecl> vertices_;
  std::map<std::string, SourceSpan, std::less<>> ids_;
  std::optional<SpinNetwork> network_;
};

bool writable_id(const std::string& id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) { return is_id_char(static_cast<unsigned char>(c)); });
}

}  // namespace

std::string_view to_string(ParseErrorKind kind) noexcept {
  switch (kind) {
    case ParseErrorKind::Lexical: return "lexical error";
    case ParseErrorKind::Syntactic: return "syntax error";
    case ParseErrorKind::Semantic: return "semantic error";
  }
  return "error";
}

std::string format_error(const ParseError& e, std::string_view source_name) {
  std::string out;
  if (!source_name.empty()) out += std::string(source_name) + ":";
  out += std::to_string(e.span.line) + ":" + std::to_string(e.span.column) + ": " + std::string(to_string(e.kind)) +
         ": " + e.message;
  return out;
}

ParseResult parse_network(std::string_view text) { return Parser(text).run(); }

std::string serialize_network(const SpinNetwork& net) {
  const auto violations = validate_network(net);
  if (!violations.empty()) throw Error(ErrorCode::InvalidNetwork, violations.front().message);
  const auto& edges = net.edges();
  const auto& vertices = net.vertices();
  for (const auto& e : edges) {
    if (!writable_id(e.id)) throw Error(ErrorCode::InvalidNetwork, "edge id '" + e.id + "' cannot be written");
  }
  for (const auto& v : vertices) {
    if (!writable_id(v.id)) throw Error(ErrorCode::InvalidNetwork, "vertex id '" + v.id + "' cannot be written");
  }

  std::vector<std::size_t> edge_order(edges.size());
  for (std::size_t i = 0; i < edge_order.size(); ++i) edge_order[i] = i;
  std::sort(edge_order.begin(), edge_order.end(), [&](std::size_t a, std::size_t b) { return edges[a].id < edges[b].id; });
  std::vector<std::size_t> vertex_order(vertices.size());
  for (std::size_t i = 0; i < vertex_order.size(); ++i) vertex_order[i] = i;
  std::sort(vertex_order.begin(), vertex_order.end(),
            [&](std::size_t a, std::size_t b) { return vertices[a].id < vertices[b].id; });

  std::string out;
  for (std::size_t e : edge_order) out += "edge " + edges[e].id + " " + std::to_string(edges[e].label.value()) + "\n";
  for (std::size_t v : vertex_order) {
    out += "vertex " + vertices[v].id;
    for (const EndRef& end : vertices[v].slots) out += " " + edges[end.edge].id;
    out += "\n";
  }
  return out;
}

}  // namespace spinnet
