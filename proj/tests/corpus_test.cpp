#include "centrank/corpus.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "centrank/error.hpp"

using namespace centrank;

namespace {

std::vector<std::string> texts(const std::vector<Sentence>& sents) {
  std::vector<std::string> out;
  for (const auto& s : sents) out.push_back(s.text);
  return out;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

// Random text mixing words, punctuation, abbreviations and CJK.
std::string random_text(std::mt19937_64& gen) {
  static const std::vector<std::string> pieces = {
      "The", "cat", "sat", "Dr.", "Smith", "left.", "He", "returned!", "Why?", "A-B",
      "(see", "this)", "e.g.", "3.5", "\"quoted.\"", "end.", "中文", "你好。", "好！",
      "U.S.", "--", "...", "x,", "y;", "Mr.", "Jones."};
  std::uniform_int_distribution<std::size_t> len(0, 14), pick(0, pieces.size() - 1);
  std::string out;
  const auto n = len(gen);
  for (std::size_t i = 0; i < n; ++i) {
    if (!out.empty()) out += (pick(gen) % 5 == 0) ? "  " : " ";
    out += pieces[pick(gen)];
  }
  return out;
}

}  // namespace

TEST(Segment, SplitsTerminatedClauses) {
  EXPECT_EQ(texts(segment("A b. C d.")), (std::vector<std::string>{"A b.", "C d."}));
}

TEST(Segment, TextWithoutTerminatorIsOneSentence) {
  auto s = segment("No terminator");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].text, "No terminator");
  EXPECT_EQ(s[0].index, 0u);
}

TEST(Segment, AbbreviationGuardKeepsTitleAttached) {
  EXPECT_EQ(texts(segment("Dr. Smith left. He returned.")),
            (std::vector<std::string>{"Dr. Smith left.", "He returned."}));
  EXPECT_EQ(texts(segment("Talks with Mr. Jones and Mrs. Lee ended. Nothing changed.")).size(), 2u);
}

TEST(Segment, DecimalsAndQuotesDoNotSplit) {
  EXPECT_EQ(segment("Prices rose 3.5 percent today.").size(), 1u);
  EXPECT_EQ(texts(segment("He said \"stop.\" Then he left.")),
            (std::vector<std::string>{"He said \"stop.\"", "Then he left."}));
  EXPECT_EQ(texts(segment("Really?! Yes.")), (std::vector<std::string>{"Really?!", "Yes."}));
}

TEST(Segment, CjkTerminatorsSplitWithoutSpaces) {
  EXPECT_EQ(texts(segment("今天下雨。明天晴！")), (std::vector<std::string>{"今天下雨。", "明天晴！"}));
}

TEST(Segment, IndicesAreContiguousAndTokensFilled) {
  auto s = segment("One two. Three four! Five?");
  ASSERT_EQ(s.size(), 3u);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i].index, i);
  EXPECT_EQ(s[1].tokens, (std::vector<std::string>{"three", "four"}));
}

TEST(Segment, EmptyAndWhitespaceYieldNothing) {
  EXPECT_TRUE(segment("").empty());
  EXPECT_TRUE(segment("   \n ").empty());
}

TEST(Segment, IdempotentOnItsOwnOutput) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 500; ++trial) {
    const auto text = random_text(gen);
    for (const auto& s : segment(text)) {
      auto again = segment(s.text);
      ASSERT_EQ(again.size(), 1u) << "text: " << text << "\nsentence: " << s.text;
      EXPECT_EQ(again[0].text, s.text);
    }
  }
}

TEST(Tokenize, StripsEdgePunctuationAndLowercases) {
  EXPECT_EQ(tokenize("The cat, sat."), (std::vector<std::string>{"the", "cat", "sat"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_EQ(tokenize("A-B c"), (std::vector<std::string>{"a-b", "c"}));
  EXPECT_EQ(tokenize("(hello) -- world!!"), (std::vector<std::string>{"hello", "world"}));
}

TEST(Tokenize, CjkSplitsPerCharacter) {
  EXPECT_EQ(tokenize("我爱北京。"), (std::vector<std::string>{"我", "爱", "北", "京"}));
  EXPECT_EQ(tokenize("GDP增长"), (std::vector<std::string>{"gdp", "增", "长"}));
}

TEST(Tokenize, JoinIsAFixpoint) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto tokens = tokenize(random_text(gen));
    EXPECT_EQ(tokenize(join(tokens)), tokens);
  }
}

TEST(LoadJsonl, MapsFieldsDirectly) {
  std::istringstream in(R"({"id":"a","text":"X. Y.","summary":"Z."})");
  auto docs = read_jsonl(in);
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].id, "a");
  EXPECT_EQ(docs[0].size(), 2u);
  ASSERT_TRUE(docs[0].reference.has_value());
  EXPECT_EQ(*docs[0].reference, "Z.");
}

TEST(LoadJsonl, MissingTextNamesTheLine) {
  std::istringstream in(R"({"id":"a"})");
  try {
    read_jsonl(in);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("missing field text at line 1"), std::string::npos);
  }
}

TEST(LoadJsonl, MalformedLineNamesTheLine) {
  std::istringstream in("{\"id\":\"a\",\"text\":\"X.\"}\n{not json\n");
  try {
    read_jsonl(in);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(LoadJsonl, PreservesFileOrder) {
  std::istringstream in(
      "{\"id\":\"c\",\"text\":\"One.\"}\n{\"id\":\"a\",\"text\":\"Two.\"}\n"
      "{\"id\":\"b\",\"text\":\"Three.\"}\n");
  auto docs = read_jsonl(in);
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0].id, "c");
  EXPECT_EQ(docs[1].id, "a");
  EXPECT_EQ(docs[2].id, "b");
  EXPECT_FALSE(docs[0].reference.has_value());
}

TEST(LoadJsonl, EmptyInputIsAnError) {
  std::istringstream in("\n\n");
  EXPECT_THROW(read_jsonl(in), DataError);
  EXPECT_THROW(load_jsonl("/nonexistent/corpus.jsonl"), DataError);
}

TEST(LoadJsonl, RoundTripsFields) {
  const std::string src =
      "{\"id\":\"d1\",\"summary\":\"Short \\\"quoted\\\" ref.\",\"text\":\"Café opened. "
      "It closed 中文.\"}\n{\"id\":\"d2\",\"text\":\"No summary here.\"}\n";
  std::istringstream in(src);
  auto docs = read_jsonl(in);
  std::ostringstream out;
  write_jsonl(out, docs);
  std::istringstream again(out.str());
  auto docs2 = read_jsonl(again);
  ASSERT_EQ(docs2.size(), docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    EXPECT_EQ(docs2[i].id, docs[i].id);
    EXPECT_EQ(docs2[i].text, docs[i].text);
    EXPECT_EQ(docs2[i].reference, docs[i].reference);
  }
  std::ostringstream out2;
  write_jsonl(out2, docs2);
  EXPECT_EQ(out2.str(), out.str());
}

TEST(Stats, SingleDocumentCounts) {
  std::vector<Document> corpus{make_document("a", "A b. C.", "Z.")};
  auto st = stats(corpus);
  EXPECT_EQ(st.doc_count, 1u);
  EXPECT_DOUBLE_EQ(st.avg_doc_words, 3.0);
  EXPECT_DOUBLE_EQ(st.avg_doc_sents, 2.0);
  EXPECT_DOUBLE_EQ(st.avg_ref_words, 1.0);
  EXPECT_DOUBLE_EQ(st.avg_ref_sents, 1.0);
  EXPECT_EQ(st.ref_docs, 1u);
}

TEST(Stats, MeanOverDocumentsAndMissingReferences) {
  std::vector<Document> corpus{make_document("a", "One two."),
                               make_document("b", "One two three four.")};
  auto st = stats(corpus);
  EXPECT_DOUBLE_EQ(st.avg_doc_words, 3.0);
  EXPECT_EQ(st.ref_docs, 0u);
  EXPECT_DOUBLE_EQ(st.avg_ref_words, 0.0);
  EXPECT_DOUBLE_EQ(st.avg_ref_sents, 0.0);
}

TEST(Stats, EmptyCorpusIsAnError) {
  EXPECT_THROW(stats({}), DataError);
}
