#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esec/predictor.hpp"

using namespace esec;

namespace {

EsecColumn column(Tn t, Ssr s, Dsr d, double time) {
    EsecColumn c;
    c.tn.fill(t);
    c.ssr.fill(s);
    c.dsr.fill(d);
    c.t = time;
    return c;
}

// A class whose tables flip one more row-triple per column.
Esec staircase(int flips, std::size_t cols, const std::string& label) {
    Esec e;
    e.label = label;
    e.t_start = 0.0;
    e.t_end = static_cast<double>(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        EsecColumn c = column(Tn::T, Ssr::Ab, Dsr::MT, static_cast<double>(j));
        for (int i = 0; i < flips && i < kPairCount; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            if (j > idx) {
                c.tn[idx] = Tn::N;
                c.ssr[idx] = Ssr::Be;
                c.dsr[idx] = Dsr::HT;
            }
        }
        e.columns.push_back(c);
    }
    return e;
}

ReferenceLibrary two_class_library() {
    ReferenceLibrary lib;
    for (int i = 0; i < 4; ++i) {
        lib.classes["alpha"].push_back(staircase(0, 6, "alpha"));
        lib.classes["beta"].push_back(staircase(8, 6, "beta"));
    }
    return lib;
}

} // namespace

TEST_CASE("predictive power formula") {
    CHECK(predictive_power(5.0, 10.0) == doctest::Approx(50.0));
    CHECK(predictive_power(10.0, 10.0) == doctest::Approx(0.0));
    CHECK(predictive_power(3.3, 11.7) == doctest::Approx((1.0 - 3.3 / 11.7) * 100.0));
    CHECK(predictive_power(3.3, 11.7) == doctest::Approx(71.794871794).epsilon(1e-9));
    CHECK_THROWS_AS(predictive_power(11.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(predictive_power(-1.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(predictive_power(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("immediate separation fires on the first column") {
    // classes maximally different from their very first column
    auto uniform_table = [](Tn t, Ssr s, Dsr d, const std::string& label) {
        Esec e;
        e.label = label;
        e.t_start = 0.0;
        e.t_end = 6.0;
        for (int j = 0; j < 6; ++j) e.columns.push_back(column(t, s, d, static_cast<double>(j)));
        return e;
    };
    ReferenceLibrary lib;
    for (int i = 0; i < 3; ++i) {
        lib.classes["alpha"].push_back(uniform_table(Tn::T, Ssr::Ab, Dsr::MT, "alpha"));
        lib.classes["beta"].push_back(uniform_table(Tn::N, Ssr::Be, Dsr::HT, "beta"));
    }
    const Prediction p = predict(uniform_table(Tn::T, Ssr::Ab, Dsr::MT, "alpha"), lib, {});
    CHECK(p.predicted.value() == "alpha");
    CHECK(p.column == 0);
    CHECK(p.P == doctest::Approx(100.0));
}

TEST_CASE("identical classes never separate") {
    ReferenceLibrary lib;
    for (int i = 0; i < 3; ++i) {
        lib.classes["a"].push_back(staircase(2, 5, "a"));
        lib.classes["b"].push_back(staircase(2, 5, "b"));
    }
    const Prediction p = predict(staircase(2, 5, "a"), lib, {});
    CHECK(!p.predicted.has_value());
    CHECK(p.P == 0.0);
    CHECK(p.column == -1);
}

TEST_CASE("single class library is rejected") {
    ReferenceLibrary lib;
    lib.classes["only"].push_back(staircase(1, 4, "only"));
    CHECK_THROWS_WITH(predict(staircase(1, 4, "only"), lib, {}), doctest::Contains("two classes"));
}

TEST_CASE("prediction is causal: extra future columns change nothing") {
    ReferenceLibrary lib = two_class_library();
    Esec query = staircase(8, 6, "beta");
    const Prediction base = predict(query, lib, {});
    REQUIRE(base.predicted.has_value());
    Esec longer = query;
    for (int i = 0; i < 3; ++i) longer.columns.push_back(longer.columns.back());
    const Prediction extended = predict(longer, lib, {});
    CHECK(extended.predicted.value() == base.predicted.value());
    CHECK(extended.column == base.column);
    CHECK(extended.T == doctest::Approx(base.T));
}

TEST_CASE("fixed seed reproduces the prediction; margins only delay it") {
    ReferenceLibrary lib = two_class_library();
    // make the classes partially similar so separation takes a few columns
    lib.classes["beta"].clear();
    for (int i = 0; i < 4; ++i) lib.classes["beta"].push_back(staircase(3, 6, "beta"));
    const Esec query = staircase(3, 6, "beta");

    PredictorConfig cfg;
    cfg.margin = 5.0;
    const Prediction a = predict(query, lib, cfg);
    const Prediction b = predict(query, lib, cfg);
    REQUIRE(a.predicted.has_value());
    CHECK(a.column == b.column);
    CHECK(a.T == b.T);

    PredictorConfig strict = cfg;
    strict.margin = 25.0;
    const Prediction c = predict(query, lib, strict);
    if (c.predicted) CHECK(c.column >= a.column);
}

TEST_CASE("leave-self-out excludes the query from its own references") {
    ReferenceLibrary lib;
    // one odd exemplar inside class "a": with itself in the library it would
    // match perfectly; excluded, it must fall back to the rest of the class
    lib.classes["a"].push_back(staircase(5, 6, "a"));
    lib.classes["a"].push_back(staircase(0, 6, "a"));
    lib.classes["a"].push_back(staircase(0, 6, "a"));
    lib.classes["b"].push_back(staircase(8, 6, "b"));
    lib.classes["b"].push_back(staircase(8, 6, "b"));
    PredictorConfig cfg;
    cfg.refs_per_class = 2;
    const Prediction with_self = predict(lib.classes["a"][0], lib, cfg);
    const Prediction without = predict(lib.classes["a"][0], lib, cfg, {{"a", 0}});
    // dropping the self-match lowers (or keeps) the own-class mean at the first column
    REQUIRE(!with_self.trace.empty());
    REQUIRE(!without.trace.empty());
    CHECK(without.trace[0].class_mean_sim.at("a") <= with_self.trace[0].class_mean_sim.at("a"));
}

TEST_CASE("bench over a toy library is perfect and parallel-stable") {
    ReferenceLibrary lib = two_class_library();
    PredictorConfig cfg;
    cfg.refs_per_class = 3;
    const BenchResult r1 = bench_predict(lib, cfg, 1);
    const BenchResult r2 = bench_predict(lib, cfg, 4);
    CHECK(r1.correct == r1.total);
    CHECK(r1.correct == r2.correct);
    CHECK(r1.mean_p_per_class.at("alpha") == r2.mean_p_per_class.at("alpha"));
}
