#include "sdp/evaluator.hpp"

#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"

using sdp::SvmEvaluator;

TEST_CASE("stratified holdout keeps both classes on both sides", "[evaluator]") {
    const auto ds = fixtures::make_synthetic("hold", 100, 4, 20, 3, 1.0, 0.5, 1);
    const auto split = sdp::stratified_holdout(ds, 0.2, 7);
    CHECK(split.train.n_rows() == 80);
    CHECK(split.valid.n_rows() == 20);
    CHECK(split.train.count(1) == 16);
    CHECK(split.valid.count(1) == 4);
    CHECK(split.train.count(0) == 64);
    CHECK(split.valid.count(0) == 16);
}

TEST_CASE("stratified holdout clamps tiny classes to one row", "[evaluator]") {
    // Three defective rows: 0.2 * 3 rounds to 1, both sides keep the class.
    const auto ds = fixtures::make_synthetic("tiny", 33, 3, 3, 2, 1.0, 0.5, 2);
    const auto split = sdp::stratified_holdout(ds, 0.2, 3);
    CHECK(split.valid.count(1) == 1);
    CHECK(split.train.count(1) == 2);
}

TEST_CASE("stratified holdout is deterministic per seed", "[evaluator]") {
    const auto ds = fixtures::make_synthetic("dets", 60, 3, 18, 2, 1.0, 0.5, 3);
    const auto a = sdp::stratified_holdout(ds, 0.25, 11);
    const auto b = sdp::stratified_holdout(ds, 0.25, 11);
    CHECK(a.train.labels == b.train.labels);
    bool same = true;
    for (std::size_t r = 0; r < a.train.n_rows(); ++r)
        for (std::size_t c = 0; c < a.train.n_features(); ++c)
            if (a.train.features(r, c) != b.train.features(r, c)) same = false;
    CHECK(same);
}

TEST_CASE("stratified holdout rejects bad input", "[evaluator]") {
    const auto ds = fixtures::make_synthetic("bad", 40, 3, 10, 2, 1.0, 0.5, 4);
    CHECK_THROWS(sdp::stratified_holdout(ds, 0.0, 1));
    CHECK_THROWS(sdp::stratified_holdout(ds, 1.0, 1));

    sdp::Dataset one = ds;
    one.labels.assign(one.n_rows(), 1);
    CHECK_THROWS(sdp::stratified_holdout(one, 0.2, 1));

    // A class with one member cannot appear on both sides.
    sdp::Dataset lone = ds;
    lone.labels.assign(lone.n_rows(), 0);
    lone.labels[0] = 1;
    CHECK_THROWS(sdp::stratified_holdout(lone, 0.2, 1));
}

TEST_CASE("evaluator memoizes chromosomes", "[evaluator]") {
    const auto ds = fixtures::make_synthetic("memo", 80, 6, 24, 4, 1.0, 0.5, 5);
    auto eval = SvmEvaluator::from_training(ds, 0.2, 9);
    REQUIRE(eval.n_features() == 6);

    const std::vector<std::uint8_t> g{1, 0, 1, 1, 0, 1};
    const double first = eval.auc_mask(g);
    CHECK(eval.evaluations() == 1);
    CHECK(eval.auc_mask(g) == first);
    CHECK(eval.evaluations() == 1); // cache hit

    const std::vector<std::uint8_t> h{0, 1, 0, 0, 1, 0};
    eval.auc_mask(h);
    CHECK(eval.evaluations() == 2);
    CHECK(first >= 0.0);
    CHECK(first <= 1.0);
}

TEST_CASE("empty selections score zero without an svm call", "[evaluator]") {
    const auto ds = fixtures::make_synthetic("zero", 50, 4, 15, 3, 1.0, 0.5, 6);
    auto eval = SvmEvaluator::from_training(ds, 0.2, 10);
    CHECK(eval.auc_mask(std::vector<std::uint8_t>(4, 0)) == 0.0);
    CHECK(eval.auc_scale(std::vector<double>(4, 0.0)) == 0.0);
    CHECK(eval.evaluations() == 0);
    CHECK(eval.failures() == 0);
}

TEST_CASE("mask and unit scale agree", "[evaluator]") {
    const auto ds = fixtures::make_synthetic("agree", 70, 5, 21, 3, 1.0, 0.5, 7);
    auto eval = SvmEvaluator::from_training(ds, 0.2, 12);
    const std::vector<std::uint8_t> g{1, 1, 0, 1, 0};
    const std::vector<double> s{1.0, 1.0, 0.0, 1.0, 0.0};
    CHECK(eval.auc_mask(g) == eval.auc_scale(s));
    // Distinct cache keys, so the scale path recomputes once.
    CHECK(eval.evaluations() == 2);
}

TEST_CASE("score fills both objectives", "[evaluator]") {
    const auto ds = fixtures::make_synthetic("objs", 60, 5, 18, 3, 1.0, 0.5, 8);
    auto eval = SvmEvaluator::from_training(ds, 0.2, 13);
    sdp::Individual ind;
    ind.genes = {1, 0, 0, 1, 0};
    eval.score(ind);
    CHECK(ind.f_removed == 3.0);
    CHECK(ind.f_auc == eval.auc_mask(ind.genes));
}

TEST_CASE("evaluator construction validates the split", "[evaluator]") {
    const auto ds = fixtures::make_synthetic("val", 40, 3, 12, 2, 1.0, 0.5, 9);
    const auto split = sdp::stratified_holdout(ds, 0.2, 14);
    sdp::Dataset broken = split.valid;
    broken.labels.assign(broken.n_rows(), 0);
    CHECK_THROWS(SvmEvaluator(split.train, broken));

    const auto other = fixtures::make_synthetic("val2", 40, 5, 12, 2, 1.0, 0.5, 9);
    CHECK_THROWS(SvmEvaluator(split.train, other));
}

TEST_CASE("evaluator is deterministic across instances", "[evaluator]") {
    const auto ds = fixtures::make_synthetic("rep", 90, 6, 27, 4, 1.0, 0.5, 10);
    auto a = SvmEvaluator::from_training(ds, 0.2, 21);
    auto b = SvmEvaluator::from_training(ds, 0.2, 21);
    sdp::Rng rng(0xea1);
    for (int i = 0; i < 10; ++i) {
        const auto g = sdp::random_genes(6, rng);
        REQUIRE(a.auc_mask(g) == b.auc_mask(g));
    }
}
