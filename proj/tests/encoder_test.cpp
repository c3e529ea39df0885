#include "centrank/encoder.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "centrank/error.hpp"
#include "centrank/lexicon.hpp"

using namespace centrank;

namespace {

std::vector<Document> three_docs() {
  return {make_document("d0", "River levels rose. The flood hit town."),
          make_document("d1", "The river was calm."),
          make_document("d2", "A river crossing opened.")};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("centrank_" + name);
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Lexicon, StemmerRules) {
  EXPECT_EQ(lexicon::stem("floods"), "flood");
  EXPECT_EQ(lexicon::stem("flooding"), "flood");
  EXPECT_EQ(lexicon::stem("flooded"), "flood");
  EXPECT_EQ(lexicon::stem("classes"), "class");
  EXPECT_EQ(lexicon::stem("cities"), "city");
  EXPECT_EQ(lexicon::stem("bus"), "bus");
  EXPECT_EQ(lexicon::stem("sing"), "sing");
  EXPECT_EQ(lexicon::stem("中文"), "中文");
}

TEST(Tfidf, IdfFormulaByHand) {
  const auto model = fit_tfidf(three_docs());
  // "river" occurs in all three documents, "flood" in one.
  EXPECT_NEAR(model.idf.at("river"), std::log(3.0 / 4.0) + 1.0, 1e-12);
  EXPECT_NEAR(model.idf.at("river"), 0.712, 1e-3);
  EXPECT_NEAR(model.idf.at("flood"), std::log(3.0 / 2.0) + 1.0, 1e-12);
  EXPECT_NEAR(model.idf.at("flood"), 1.405, 1e-3);
  EXPECT_FALSE(model.idf.contains("the"));
  EXPECT_NEAR(model.idf_of("unseen"), std::log(3.0) + 1.0, 1e-12);
  for (const auto& [term, idf] : model.idf) EXPECT_GE(idf, 0.0) << term;
}

TEST(Tfidf, TermFrequencyTimesIdf) {
  const auto model = fit_tfidf(three_docs());
  auto doc = make_document("q", "Flood flood. The of and. Flood flood.");
  auto emb = encode_tfidf(doc, model);
  ASSERT_EQ(emb.rows(), 3u);
  EXPECT_EQ(emb.dim(), model.dim());
  const auto col = static_cast<Eigen::Index>(model.column.at("flood"));
  EXPECT_NEAR(emb.data(0, col), 2.0 * (std::log(1.5) + 1.0), 1e-12);
  EXPECT_NEAR(emb.data(0, col), 2.81, 1e-2);
  EXPECT_EQ(emb.data.row(1).squaredNorm(), 0.0);
  EXPECT_EQ(emb.zero_rows, (std::vector<std::size_t>{1}));
  EXPECT_EQ(emb.data.row(0), emb.data.row(2));
}

TEST(Tfidf, RowsIgnoreTokenOrder) {
  const auto model = fit_tfidf(three_docs());
  std::vector<std::string> words{"river", "flood", "levels", "town", "river", "hit", "calm"};
  std::mt19937_64 gen(3);
  auto sentence_of = [](const std::vector<std::string>& w) {
    std::string s;
    for (const auto& t : w) s += t + " ";
    return s;
  };
  const auto base = encode_tfidf(make_document("a", sentence_of(words)), model);
  for (int i = 0; i < 50; ++i) {
    std::shuffle(words.begin(), words.end(), gen);
    const auto shuffled = encode_tfidf(make_document("b", sentence_of(words)), model);
    EXPECT_EQ(shuffled.data, base.data);
  }
}

TEST(Distributional, MeanOfTokenRows) {
  std::vector<Document> corpus{make_document("c", "alpha beta.")};
  auto params = EncoderParams::with_vocabulary(corpus, 2);
  ASSERT_EQ(params.vocab_size(), 3u);
  params.emb_target.row(params.row_of("alpha")) << 1.0, 0.0;
  params.emb_target.row(params.row_of("beta")) << 0.0, 1.0;
  params.emb_target.row(EncoderParams::kUnknownRow) << 7.0, -7.0;
  params.emb_context.setConstant(3.0);

  auto doc = make_document("d", "alpha. alpha beta. gamma delta. ...");
  auto v = encode_distributional(doc, params, Table::kTarget);
  ASSERT_EQ(v.rows(), 4u);
  EXPECT_EQ(v.data.row(0), params.emb_target.row(params.row_of("alpha")));
  EXPECT_DOUBLE_EQ(v.data(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(v.data(1, 1), 0.5);
  EXPECT_EQ(v.data.row(2), params.emb_target.row(EncoderParams::kUnknownRow));
  EXPECT_EQ(v.data.row(3).squaredNorm(), 0.0);
  EXPECT_EQ(v.zero_rows, (std::vector<std::size_t>{3}));

  auto c = encode_distributional(doc, params, Table::kContext);
  EXPECT_DOUBLE_EQ(c.data(0, 0), 3.0);
}

TEST(Params, SaveLoadRoundTrip) {
  std::vector<Document> corpus{make_document("c", "one two three. four five.")};
  auto params = EncoderParams::with_vocabulary(corpus, 3);
  std::mt19937_64 gen(5);
  std::normal_distribution<double> nd;
  for (auto* t : {&params.emb_target, &params.emb_context}) {
    for (Eigen::Index i = 0; i < t->size(); ++i) t->data()[i] = nd(gen) / 3.0;
  }
  std::stringstream buf;
  save_params(buf, params);
  auto loaded = load_params(buf);
  EXPECT_EQ(loaded.tokens, params.tokens);
  EXPECT_EQ(loaded.emb_target, params.emb_target);
  EXPECT_EQ(loaded.emb_context, params.emb_context);
  EXPECT_EQ(loaded.row_of("four"), params.row_of("four"));
}

TEST(Interchange, LoadMatchingDocument) {
  auto doc = make_document("doc-1", "First one. Second one.");
  auto path = temp_file("emb_ok.jsonl",
                        R"({"doc_id":"doc-1","dim":3,"vectors":[[1,2,3],[4.5,5,6]]})"
                        "\n");
  auto emb = load_embeddings(path.string(), doc);
  EXPECT_EQ(emb.rows(), 2u);
  EXPECT_EQ(emb.dim(), 3u);
  EXPECT_DOUBLE_EQ(emb.data(1, 0), 4.5);
}

TEST(Interchange, RowCountMismatchNamesDocAndCounts) {
  auto doc = make_document("doc-2", "First one. Second one.");
  auto path = temp_file("emb_rows.jsonl",
                        R"({"doc_id":"doc-2","dim":1,"vectors":[[1],[2],[3]]})"
                        "\n");
  try {
    load_embeddings(path.string(), doc);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("doc-2"), std::string::npos);
    EXPECT_NE(msg.find("3"), std::string::npos);
    EXPECT_NE(msg.find("2"), std::string::npos);
  }
}

TEST(Interchange, NonFiniteValueReportsPosition) {
  auto doc = make_document("doc-3", "First one. Second one.");
  for (const char* bad : {"NaN", "null", "Infinity", "-Infinity"}) {
    auto path = temp_file("emb_nan.jsonl", std::string(R"({"doc_id":"doc-3","dim":2,"vectors":[[0,)") +
                                               bad + "],[1,1]]}\n");
    try {
      load_embeddings(path.string(), doc);
      FAIL() << "expected DataError for " << bad;
    } catch (const DataError& e) {
      EXPECT_NE(std::string(e.what()).find("non-finite value at row 0 col 1"), std::string::npos)
          << e.what();
    }
  }
}

TEST(Interchange, MissingDocumentIsAnError) {
  auto doc = make_document("absent", "Only one.");
  auto path = temp_file("emb_missing.jsonl", R"({"doc_id":"other","dim":1,"vectors":[[1]]})"
                                             "\n");
  EXPECT_THROW(load_embeddings(path.string(), doc), DataError);
}

TEST(Interchange, WriteThenReadIsIdentity) {
  std::mt19937_64 gen(9);
  std::normal_distribution<double> nd(0.0, 1e3);
  for (int trial = 0; trial < 20; ++trial) {
    EmbeddingMatrix emb;
    emb.doc_id = "r" + std::to_string(trial);
    emb.data.resize(1 + trial % 5, 1 + trial % 7);
    for (Eigen::Index i = 0; i < emb.data.size(); ++i) emb.data.data()[i] = nd(gen) / 7.0;
    std::stringstream buf;
    write_embeddings(buf, emb);
    auto table = read_embeddings(buf);
    ASSERT_EQ(table.size(), 1u);
    EXPECT_EQ(table.at(emb.doc_id).data, emb.data);
  }
}

TEST(Interchange, WriterOutputHasSchemaFields) {
  std::ifstream schema_in(std::string(CENTRANK_SCHEMA_DIR) + "/embeddings.schema.json");
  ASSERT_TRUE(schema_in);
  auto schema = nlohmann::json::parse(schema_in);
  EmbeddingMatrix emb{"x", Eigen::MatrixXd::Ones(2, 3), {}};
  std::stringstream buf;
  write_embeddings(buf, emb);
  auto rec = nlohmann::json::parse(buf.str());
  for (const auto& field : schema.at("required")) {
    EXPECT_TRUE(rec.contains(field.get<std::string>())) << field;
  }
  EXPECT_TRUE(rec["doc_id"].is_string());
  EXPECT_TRUE(rec["dim"].is_number_integer());
  EXPECT_EQ(rec["vectors"].size(), 2u);
}
