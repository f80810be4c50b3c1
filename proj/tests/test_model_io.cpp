#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "refkernel/dense_matrix.hpp"
#include "refkernel/errors.hpp"
#include "refkernel/model_io.hpp"
#include "refkernel/pipeline.hpp"
#include "refkernel/rng.hpp"
#include "refkernel/standardize.hpp"

namespace fs = std::filesystem;
using refkernel::DenseMatrix;
using refkernel::Method;
using refkernel::ModelSpec;
using refkernel::PathKind;
using refkernel::ReferenceCase;

namespace {

struct Fixture {
    DenseMatrix train;
    DenseMatrix neg;
    DenseMatrix probe;
    Fixture() : train(0, 0), neg(0, 0), probe(0, 0) {
        auto rng = refkernel::make_rng(321, "test/model-io");
        train = refkernel::standard_normal_matrix(3, 14, rng);
        neg = refkernel::standard_normal_matrix(3, 9, rng);
        for (std::size_t j = 0; j < neg.cols(); ++j) neg(0, j) += 4.0;
        probe = refkernel::standard_normal_matrix(3, 6, rng);
    }
};

refkernel::OneClassModel fit(const Fixture& f, Method m, PathKind p,
                             std::optional<ReferenceCase> c) {
    ModelSpec spec;
    spec.method = m;
    spec.path = p;
    spec.ref_case = c;
    spec.sigma = 1.4;
    spec.hyper = 0.5;
    auto rng = refkernel::make_rng(11, "test/model-io-fit");
    return refkernel::fit_one_class(spec, f.train, &f.neg, rng,
                                    refkernel::NormStats::identity(3));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("round trip reproduces scores bit for bit") {
    Fixture f;
    const auto tmp = (fs::temp_directory_path() / "model_roundtrip.rkm").string();
    const std::pair<Method, PathKind> combos[] = {
        {Method::svdd, PathKind::kernel},
        {Method::svdd, PathKind::mapping},
        {Method::ocsvm, PathKind::kernel},
        {Method::ocsvm, PathKind::mapping},
    };
    const std::optional<ReferenceCase> cases[] = {
        std::nullopt,
        ReferenceCase::training,
        ReferenceCase::gaussian_matched,
        ReferenceCase::negatives_augmented,
    };
    for (const auto& [m, p] : combos) {
        for (const auto& c : cases) {
            const auto model = fit(f, m, p, c);
            refkernel::save_model(model, tmp);
            const auto loaded = refkernel::load_model(tmp);

            CHECK(loaded.spec.method == model.spec.method);
            CHECK(loaded.spec.path == model.spec.path);
            CHECK(loaded.spec.ref_case == model.spec.ref_case);
            CHECK(loaded.spec.sigma == model.spec.sigma);
            CHECK(loaded.spec.hyper == model.spec.hyper);
            CHECK(loaded.threshold == model.threshold);
            CHECK(loaded.rank == model.rank);
            CHECK(loaded.alpha == model.alpha);
            CHECK(loaded.support_idx == model.support_idx);

            const auto want = refkernel::decide_block(model, f.probe);
            const auto got = refkernel::decide_block(loaded, f.probe);
            REQUIRE(want.size() == got.size());
            for (std::size_t i = 0; i < want.size(); ++i) {
                CHECK(want[i].score == got[i].score); // bitwise
                CHECK(want[i].is_target == got[i].is_target);
            }
        }
    }
    fs::remove(tmp);
}

TEST_CASE("save load save is byte stable") {
    Fixture f;
    const auto model = fit(f, Method::svdd, PathKind::kernel, ReferenceCase::training);
    const auto tmp1 = (fs::temp_directory_path() / "model_stable1.rkm").string();
    const auto tmp2 = (fs::temp_directory_path() / "model_stable2.rkm").string();
    refkernel::save_model(model, tmp1);
    const auto loaded = refkernel::load_model(tmp1);
    refkernel::save_model(loaded, tmp2);
    CHECK(slurp(tmp1) == slurp(tmp2));
    fs::remove(tmp1);
    fs::remove(tmp2);
}

TEST_CASE("standardization stats survive the round trip") {
    Fixture f;
    const auto norm = refkernel::compute_norm_stats(f.train);
    ModelSpec spec;
    spec.sigma = 1.0;
    spec.hyper = 0.5;
    auto rng = refkernel::make_rng(13, "test/model-io-norm");
    const auto model = refkernel::fit_one_class(spec, refkernel::apply_norm(norm, f.train),
                                                nullptr, rng, norm);
    const auto tmp = (fs::temp_directory_path() / "model_norm.rkm").string();
    refkernel::save_model(model, tmp);
    const auto loaded = refkernel::load_model(tmp);
    CHECK(loaded.norm.mean == model.norm.mean);
    CHECK(loaded.norm.stddev == model.norm.stddev);
    const auto want = refkernel::decide_raw(model, f.probe);
    const auto got = refkernel::decide_raw(loaded, f.probe);
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(want[i].score == got[i].score);
    fs::remove(tmp);
}

TEST_CASE("malformed files are rejected") {
    Fixture f;
    const auto model = fit(f, Method::svdd, PathKind::kernel, std::nullopt);
    const auto tmp = (fs::temp_directory_path() / "model_bad.rkm").string();
    refkernel::save_model(model, tmp);
    const std::string good = slurp(tmp);

    // Unsupported version.
    {
        std::ofstream out(tmp);
        std::string bumped = good;
        bumped.replace(bumped.find(" 1"), 2, " 99");
        out << bumped;
    }
    CHECK_THROWS_AS(refkernel::load_model(tmp), refkernel::ModelFormatError);

    // Truncation.
    {
        std::ofstream out(tmp);
        out << good.substr(0, good.size() / 2);
    }
    CHECK_THROWS_AS(refkernel::load_model(tmp), refkernel::ModelFormatError);

    // Garbage token where a number is expected.
    {
        std::ofstream out(tmp);
        std::string garbled = good;
        const auto pos = garbled.find("0x");
        REQUIRE(pos != std::string::npos);
        garbled.replace(pos, 2, "zz");
        out << garbled;
    }
    CHECK_THROWS_AS(refkernel::load_model(tmp), refkernel::ModelFormatError);

    CHECK_THROWS_AS(refkernel::load_model("/nonexistent/model.rkm"),
                    refkernel::ModelFormatError);
    fs::remove(tmp);
}
