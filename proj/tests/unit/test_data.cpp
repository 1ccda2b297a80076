//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "aisens/ais/tokenizer.hpp"
#include "aisens/data/csv.hpp"
#include "aisens/data/dataset.hpp"
#include "aisens/error.hpp"

namespace aisens::data {
namespace {

ColumnMap qed_logp() {
  ColumnMap m;
  m.properties = { { "qed", "qed" }, { "logp", "logP" } };
  return m;
}

std::vector<Record> dummy_records(std::size_t n) {
  std::vector<Record> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].smiles = "C";
    out[i].targets["qed"] = static_cast<double>(i);
  }
  return out;
}

TEST(Csv, Rfc4180) {
  const auto rows = parse_csv("a,b\r\n\"x,1\",\"say \"\"hi\"\"\"\n3,\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1], (CsvRow{ "x,1", "say \"hi\"" }));
  EXPECT_EQ(rows[2], (CsvRow{ "3", "" }));
  EXPECT_EQ(parse_csv("a,b").size(), 1u);
  EXPECT_THROW(parse_csv("a,\"b\n"), FormatError);
  EXPECT_THROW(parse_csv("\"a\"x,b\n"), FormatError);
  EXPECT_EQ(csv_line({ "a,b", "c\"d", "e" }), "\"a,b\",\"c\"\"d\",e\n");
  EXPECT_EQ(parse_csv(csv_line({ "a,b", "c\"d", "e" }))[0],
            (CsvRow{ "a,b", "c\"d", "e" }));
}

TEST(LoadCsv, ThreeRows) {
  const auto res = load_csv_text(
      "smiles,qed,logP\nCCO,0.4,-0.1\nc1ccccc1,0.44,1.69\nC(=C)C1=CC=CC=C1,0.48,2.5\n",
      qed_logp());
  ASSERT_EQ(res.records.size(), 3u);
  EXPECT_TRUE(res.rejects.empty());
  for (const auto &r: res.records)
    EXPECT_EQ(r.targets.size(), 2u);
  EXPECT_EQ(res.records[0].tokens_smiles, (TokenSeq{ "C", "C", "O" }));
  EXPECT_EQ(res.records[0].tokens_ais.front(), "[CH3;!R;C]");
  EXPECT_DOUBLE_EQ(res.records[1].targets.at("logp"), 1.69);
}

TEST(LoadCsv, RejectsAreReported) {
  const auto res = load_csv_text(
      "smiles,qed,logP\nCCO,1.2,0\nC1CC,0.5,0\nCCN,abc,0\nCCC,0.5\n\nCC,0.3,1\nCC,0.3,1\n",
      qed_logp(), 3);
  ASSERT_EQ(res.records.size(), 2u);
  ASSERT_EQ(res.rejects.size(), 4u);
  EXPECT_EQ(res.rejects[0].row_number, 1u);
  EXPECT_EQ(res.rejects[0].reason.rfind("RangeViolation", 0), 0u);
  EXPECT_EQ(res.rejects[1].reason.rfind("RingClosureError", 0), 0u);
  EXPECT_EQ(res.rejects[2].reason.rfind("FormatError", 0), 0u);
  EXPECT_EQ(res.rejects[3].row_number, 4u);
  EXPECT_EQ(res.duplicates, 1u);
  EXPECT_EQ(rejects_csv(res.rejects).substr(0, 33),
            "row_number,reason\n1,\"RangeViolati");
}

TEST(LoadCsv, MissingColumnAndIo) {
  EXPECT_THROW(load_csv_text("smiles,qed\nC,0.5\n", qed_logp()), MissingColumn);
  EXPECT_THROW(load_csv("/nonexistent/x.csv", qed_logp()), IoError);
}

TEST(LoadCsv, MolwtRange) {
  ColumnMap m;
  m.properties = { { "molwt", "MolWt" } };
  const auto res = load_csv_text("smiles,MolWt\nC,0\nC,16.04\n", m);
  EXPECT_EQ(res.records.size(), 1u);
  EXPECT_EQ(res.rejects.size(), 1u);
}

TEST(AssignSplits, TenRecords) {
  auto recs = dummy_records(10);
  assign_splits(recs, SplitSpec{ 0.8, 0.1, 0.1, 42 });
  EXPECT_EQ(count_split(recs, Split::kTrain), 8u);
  EXPECT_EQ(count_split(recs, Split::kValid), 1u);
  EXPECT_EQ(count_split(recs, Split::kTest), 1u);
  auto again = dummy_records(10);
  assign_splits(again, SplitSpec{ 0.8, 0.1, 0.1, 42 });
  for (std::size_t i = 0; i < 10; ++i)
    EXPECT_EQ(recs[i].split, again[i].split);
  bool differs = false;
  for (std::uint64_t seed = 1; seed < 20 && !differs; ++seed) {
    auto other = dummy_records(10);
    assign_splits(other, SplitSpec{ 0.8, 0.1, 0.1, seed });
    for (std::size_t i = 0; i < 10; ++i)
      differs |= other[i].split != recs[i].split;
  }
  EXPECT_TRUE(differs);
}

TEST(AssignSplits, LargeCounts) {
  auto recs = dummy_records(250000);
  assign_splits(recs, SplitSpec{});
  EXPECT_NEAR(static_cast<double>(count_split(recs, Split::kTrain)), 200000, 1);
  EXPECT_NEAR(static_cast<double>(count_split(recs, Split::kValid)), 25000, 1);
  EXPECT_NEAR(static_cast<double>(count_split(recs, Split::kTest)), 25000, 1);
}

TEST(AssignSplits, ProportionsForRandomSpecs) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 1 + rng() % 500;
    const double a = 0.05 + 0.85 * static_cast<double>(rng() % 1000) / 1000.0;
    const double b = (1 - a) * (0.05 + 0.9 * static_cast<double>(rng() % 1000) / 1000.0);
    const SplitSpec spec{ a, b, 1 - a - b, rng() };
    auto recs = dummy_records(n);
    assign_splits(recs, spec);
    const double nt = static_cast<double>(count_split(recs, Split::kTrain));
    const double nv = static_cast<double>(count_split(recs, Split::kValid));
    const double ns = static_cast<double>(count_split(recs, Split::kTest));
    EXPECT_EQ(nt + nv + ns, static_cast<double>(n));
    EXPECT_LE(std::abs(nt - a * static_cast<double>(n)), 1.0);
    EXPECT_LE(std::abs(nv - b * static_cast<double>(n)), 1.0 + 1e-9);
    EXPECT_LE(std::abs(ns - spec.test * static_cast<double>(n)), 1.0 + 1e-9);
  }
  EXPECT_THROW((SplitSpec{ 0.5, 0.5, 0.0, 1 }.validate()), ConfigError);
  EXPECT_THROW((SplitSpec{ 0.5, 0.3, 0.3, 1 }.validate()), ConfigError);
}

TEST(TargetScaler, TrainOnlyAndInverse) {
  auto recs = dummy_records(100);
  for (std::size_t i = 0; i < recs.size(); ++i)
    recs[i].targets["molwt"] = 200.0 + 3.0 * static_cast<double>(i);
  assign_splits(recs, SplitSpec{});
  const std::vector<std::string> props = { "molwt" };
  const TargetScaler sc = TargetScaler::fit(recs, props);
  for (auto &r: recs)
    if (r.split == Split::kValid)
      r.targets["molwt"] += 1e6;
  EXPECT_EQ(TargetScaler::fit(recs, props), sc);
  EXPECT_TRUE(sc.stats("molwt").enabled);
  EXPECT_FALSE(sc.stats("qed").enabled);
  EXPECT_EQ(sc.transform("qed", 0.3), 0.3);
  for (double y: { 180.0, 250.5, 499.9, -3.0 })
    EXPECT_NEAR(sc.inverse("molwt", sc.transform("molwt", y)), y, 1e-12);
}

Vocabulary vocab_for(const std::vector<Record> &recs, Representation rep) {
  std::vector<TokenSeq> corpus;
  for (const auto &r: recs)
    corpus.push_back(r.tokens(rep));
  return build_vocab(corpus);
}

std::vector<Record> small_set() {
  auto res = load_csv_text("smiles,qed,logP\nCCO,0.4,-0.1\nc1ccccc1,0.44,1.7\n"
                           "CCN,0.4,0.1\nCC(=O)O,0.4,0.2\nC1CC1,0.3,1.1\n",
                           qed_logp());
  for (auto &r: res.records)
    r.split = Split::kTrain;
  return res.records;
}

TEST(Batches, SizesAndDeterminism) {
  const auto recs = small_set();
  const auto v = vocab_for(recs, Representation::kAis);
  const auto set = encode_split(recs, Split::kTrain, v, Representation::kAis,
                                "qed", TargetScaler{}, 16);
  ASSERT_EQ(set.size(), 5u);
  const auto b = epoch_batches(set, Split::kTrain, 2, 7, 0);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0].size(), 2);
  EXPECT_EQ(b[1].size(), 2);
  EXPECT_EQ(b[2].size(), 1);
  for (int epoch = 0; epoch < 2; ++epoch) {
    const auto x = epoch_batches(set, Split::kTrain, 2, 7, epoch);
    const auto y = epoch_batches(set, Split::kTrain, 2, 7, epoch);
    for (std::size_t i = 0; i < x.size(); ++i)
      EXPECT_EQ(x[i].rows, y[i].rows);
  }
  const auto fixed = epoch_batches(set, Split::kValid, 2, 7, 3);
  EXPECT_EQ(fixed[0].rows, (std::vector<std::size_t>{ 0, 1 }));
}

TEST(Batches, EpochsReshuffle) {
  auto recs = dummy_records(200);
  for (auto &r: recs)
    tokenize_record(r);
  const auto v = vocab_for(recs, Representation::kAis);
  const auto set = encode_split(recs, Split::kTrain, v, Representation::kAis,
                                "qed", TargetScaler{}, 8);
  EXPECT_NE(epoch_batches(set, Split::kTrain, 16, 1, 0)[0].rows,
            epoch_batches(set, Split::kTrain, 16, 1, 1)[0].rows);
}

TEST(Batches, RepresentationsShareTargets) {
  const auto recs = small_set();
  const auto va = vocab_for(recs, Representation::kAis);
  const auto vs = vocab_for(recs, Representation::kSmiles);
  const auto a = encode_split(recs, Split::kTrain, va, Representation::kAis,
                              "qed", TargetScaler{}, 12);
  const auto s = encode_split(recs, Split::kTrain, vs, Representation::kSmiles,
                              "qed", TargetScaler{}, 12);
  const auto ba = make_batches(a, 5, std::nullopt);
  const auto bs = make_batches(s, 5, std::nullopt);
  EXPECT_NE(ba[0].ids, bs[0].ids);
  EXPECT_EQ(ba[0].targets, bs[0].targets);
  EXPECT_THROW(encode_split(recs, Split::kTrain, va, Representation::kAis,
                            "molwt", TargetScaler{}, 12),
               MissingColumn);
}

TEST(Jsonl, RoundTrip) {
  auto recs = small_set();
  recs[1].split = Split::kTest;
  std::string text;
  for (const auto &r: recs)
    text += to_jsonl_line(r, Representation::kSmiles);
  Representation rep = Representation::kAis;
  const auto back = read_jsonl(text, &rep);
  EXPECT_EQ(rep, Representation::kSmiles);
  ASSERT_EQ(back.size(), recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(back[i].smiles, recs[i].smiles);
    EXPECT_EQ(back[i].tokens_smiles, recs[i].tokens_smiles);
    EXPECT_TRUE(back[i].tokens_ais.empty());
    EXPECT_EQ(back[i].targets, recs[i].targets);
    EXPECT_EQ(back[i].split, recs[i].split);
  }
  EXPECT_THROW(read_jsonl("{\"smiles\": 1}\n"), FormatError);
  EXPECT_THROW(read_jsonl(to_jsonl_line(recs[0], Representation::kAis)
                          + to_jsonl_line(recs[0], Representation::kSmiles)),
               FormatError);
  EXPECT_TRUE(read_jsonl("").empty());
}

}  // namespace
}  // namespace aisens::data
