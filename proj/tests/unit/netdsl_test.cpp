#include <gtest/gtest.h>

#include <random>
#include <string>

#include "../support/corpus.hpp"
#include "spinnet/core/error.hpp"
#include "spinnet/netdsl/netdsl.hpp"

namespace spinnet {
namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (true) {
    const std::size_t nl = text.find('\n', start);
    std::string line(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

void expect_spans_inside(std::string_view text, const ParseResult& r) {
  const auto lines = split_lines(text);
  for (const ParseError& e : r.errors) {
    ASSERT_GE(e.span.line, 1U) << e.message;
    ASSERT_LE(e.span.line, lines.size()) << e.message;
    ASSERT_GE(e.span.column, 1U) << e.message;
    ASSERT_LE(e.span.column - 1 + e.span.length, lines[e.span.line - 1].size()) << e.message;
  }
}

TEST(Parse, SingleVertexWithTwoFreeEnds) {
  const auto r = parse_network("edge e1 2\nedge e2 2\nedge e3 0\nvertex v1 e1 e2 e3");
  ASSERT_TRUE(r.ok());
  const SpinNetwork& net = *r.network;
  EXPECT_EQ(net.edges().size(), 3U);
  EXPECT_EQ(net.free_ends().size(), 3U);
  EXPECT_TRUE(net.is_free_end(EndRef{0, 1}));
  EXPECT_FALSE(net.is_free_end(EndRef{0, 0}));
  EXPECT_EQ(resolve_free_end(net, "e2"), (EndRef{1, 1}));
}

TEST(Parse, NegativeLabelPointsAtTheLabel) {
  const auto r = parse_network("edge e1 -1");
  ASSERT_EQ(r.errors.size(), 1U);
  EXPECT_EQ(r.errors[0].kind, ParseErrorKind::Semantic);
  EXPECT_EQ(r.errors[0].span, (SourceSpan{1, 9, 2}));
  EXPECT_FALSE(r.network);
}

TEST(Parse, ThirdUseOfAnEdge) {
  const auto r = parse_network("edge e1 1\nvertex v1 e1 e1 e1\n");
  ASSERT_EQ(r.errors.size(), 1U);
  EXPECT_EQ(r.errors[0].kind, ParseErrorKind::Semantic);
  EXPECT_EQ(r.errors[0].span, (SourceSpan{2, 17, 2}));
}

TEST(Parse, InadmissibleVertexUsesTheVertexSpan) {
  const auto r = parse_network("edge a 1\nedge b 1\nedge c 1\n  vertex v a b c  # odd sum\n");
  ASSERT_EQ(r.errors.size(), 1U);
  EXPECT_EQ(r.errors[0].kind, ParseErrorKind::Semantic);
  EXPECT_EQ(r.errors[0].span, (SourceSpan{4, 3, 14}));
}

TEST(Parse, ReportsEveryError) {
  const std::string text =
      "edge a 2\n"
      "edge a 3\n"
      "bogus x\n"
      "edge b\n"
      "edge c x1\n"
      "vertex v a q a\n"
      "edge d 1 extra\n"
      "edge e$ 1\n";
  const auto r = parse_network(text);
  ASSERT_EQ(r.errors.size(), 7U);
  std::vector<std::pair<std::size_t, ParseErrorKind>> got;
  for (const auto& e : r.errors) got.emplace_back(e.span.line, e.kind);
  const std::vector<std::pair<std::size_t, ParseErrorKind>> want{
      {2, ParseErrorKind::Semantic},  {3, ParseErrorKind::Syntactic}, {4, ParseErrorKind::Syntactic},
      {5, ParseErrorKind::Syntactic}, {6, ParseErrorKind::Semantic},  {7, ParseErrorKind::Syntactic},
      {8, ParseErrorKind::Lexical}};
  EXPECT_EQ(got, want);
  EXPECT_EQ(r.errors[6].span, (SourceSpan{8, 7, 1}));
  expect_spans_inside(text, r);
}

TEST(Parse, DuplicateIdsAcrossEdgesAndVertices) {
  const auto r = parse_network("edge x 0\nedge y 0\nedge z 0\nvertex x y z x\n");
  ASSERT_EQ(r.errors.size(), 1U);
  EXPECT_EQ(r.errors[0].span, (SourceSpan{4, 8, 1}));
}

TEST(Parse, CommentsBlankLinesAndCrLf) {
  const auto r = parse_network("version 1\r\n# a bare unit\r\n\r\n   \r\nedge e 3 # trailing\r\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.network->edges().size(), 1U);
  EXPECT_EQ(r.network->free_ends().size(), 2U);
}

TEST(Parse, VersionHeader) {
  EXPECT_EQ(parse_network("version 2\n").errors.at(0).kind, ParseErrorKind::Semantic);
  EXPECT_EQ(parse_network("edge a 1\nversion 1\n").errors.at(0).kind, ParseErrorKind::Syntactic);
}

TEST(Parse, NonAsciiOutsideCommentsIsLexical) {
  const std::string text = "edge \xCE\xB1 1\n# \xCE\xB2 is fine here\n";
  const auto r = parse_network(text);
  ASSERT_EQ(r.errors.size(), 1U);
  EXPECT_EQ(r.errors[0].kind, ParseErrorKind::Lexical);
  EXPECT_EQ(r.errors[0].span, (SourceSpan{1, 6, 2}));
  expect_spans_inside(text, r);
}

TEST(Parse, EmptyTextIsTheEmptyNetwork) {
  const auto r = parse_network("");
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r.network->empty());
}

TEST(Parse, FormatErrorPrefixesPosition) {
  const auto r = parse_network("edge e1 -1");
  EXPECT_EQ(format_error(r.errors.at(0), "in.snet"),
            "in.snet:1:9: semantic error: label must be non-negative, got -1");
}

TEST(Serialize, EmptyNetwork) { EXPECT_EQ(serialize_network(SpinNetwork{}), ""); }

TEST(Serialize, CanonicalOrder) {
  const auto net = NetworkBuilder()
                       .edge("b", 1)
                       .edge("a", 1)
                       .edge("c", 2)
                       .vertex("w", {"a", "b", "c"})
                       .build();
  EXPECT_EQ(serialize_network(net), "edge a 1\nedge b 1\nedge c 2\nvertex w a b c\n");
}

TEST(Serialize, RejectsInvalidNetworks) {
  const SpinNetwork dup({Edge{"e", SpinLabel(1)}, Edge{"e", SpinLabel(1)}}, {});
  EXPECT_THROW((void)serialize_network(dup), Error);
  try {
    (void)serialize_network(dup);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidNetwork);
  }
  const SpinNetwork spaced({Edge{"has space", SpinLabel(1)}}, {});
  EXPECT_THROW((void)serialize_network(spaced), Error);
}

TEST(RoundTrip, CorpusNetworks) {
  int count = 0;
  for (const bool closed : {false, true}) {
    testing::CorpusSpec spec;
    spec.closed = closed;
    spec.max_vertices = 6;
    spec.max_edges = 10;
    spec.max_label = 6;
    for (const auto& net : testing::make_corpus(closed ? 3 : 4, 150, spec)) {
      const std::string text = serialize_network(net);
      const auto r = parse_network(text);
      ASSERT_TRUE(r.ok()) << text << format_error(r.errors.at(0));
      EXPECT_TRUE(testing::same_up_to_edge_reversal(net, *r.network)) << text;
      EXPECT_EQ(serialize_network(*r.network), text);
      ++count;
    }
  }
  EXPECT_EQ(count, 300);
}

std::string mutate(std::string text, std::mt19937_64& rng) {
  static const std::string alphabet = "edgvrtx 0123456789-#\n\r\t*abc\xCE\xB1\xFF";
  std::uniform_int_distribution<int> op(0, 3);
  const int edits = 1 + static_cast<int>(rng() % 4);
  for (int k = 0; k < edits; ++k) {
    const std::size_t pos = text.empty() ? 0 : rng() % (text.size() + 1);
    const char c = alphabet[rng() % alphabet.size()];
    switch (op(rng)) {
      case 0: text.insert(text.begin() + static_cast<std::ptrdiff_t>(pos), c); break;
      case 1:
        if (pos < text.size()) text.erase(pos, 1 + rng() % 3);
        break;
      case 2:
        if (pos < text.size()) text[pos] = c;
        break;
      default: {
        const std::size_t from = text.empty() ? 0 : rng() % text.size();
        text.insert(pos, text.substr(from, rng() % 12));
      }
    }
  }
  return text;
}

TEST(Fuzz, MutatedInputsGiveSpannedErrors) {
  std::mt19937_64 rng(2718);
  testing::CorpusSpec spec;
  const auto corpus = testing::make_corpus(19, 40, spec);
  int rejected = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    std::string text;
    if (trial % 5 == 0) {
      const std::size_t len = rng() % 80;
      for (std::size_t k = 0; k < len; ++k) text.push_back(static_cast<char>(rng() & 0xFF));
    } else {
      text = mutate(serialize_network(corpus[static_cast<std::size_t>(trial) % corpus.size()]), rng);
    }
    const auto r = parse_network(text);
    EXPECT_EQ(r.ok(), r.network.has_value());
    expect_spans_inside(text, r);
    if (r.ok()) {
      EXPECT_TRUE(is_valid(*r.network));
    } else {
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 1000);
}

}  // namespace
}  // namespace spinnet
