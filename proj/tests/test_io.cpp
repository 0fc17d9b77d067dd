#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "sepfda/errors.hpp"
#include "sepfda/io.hpp"
#include "sepfda/rng.hpp"
#include "sepfda/simgen.hpp"

using namespace sepfda;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/sepfda_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

DiscreteCurves small_curves() {
    Rng rng(3);
    const TimeGrid grid = uniform_grid(Interval{0.0, 1.0}, 12);
    Matrix sigma_row = make_sigma_row(2, rng);
    DiscreteCurves curves = sample_process(4, 2, grid, sigma_row,
                                           KernelSpec::ou(0.3, 0.3), ProcessOptions{}, Rng(5));
    curves.labels = {false, true, false, true};
    return curves;
}

} // namespace

TEST_CASE("format_double round trips") {
    for (double v : {0.1, 1.0 / 3.0, 12345.6789e-7, -2.5e300, 0.0}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("curve csv round trip is exact") {
    const DiscreteCurves curves = small_curves();
    TempFile file("curves.csv");
    write_curves_csv(curves, file.path);
    const DiscreteCurves back = read_curves_csv(file.path);

    CHECK(back.n() == curves.n());
    CHECK(back.p() == curves.p());
    CHECK(back.ids == curves.ids);
    CHECK(back.grid.points == curves.grid.points);
    for (int i = 0; i < curves.n(); ++i) CHECK(back.samples[i] == curves.samples[i]);
}

TEST_CASE("curve csv validation errors carry line numbers") {
    TempFile file("bad.csv");
    {
        std::ofstream out(file.path);
        out << "sample_id,coordinate,time,value\n";
        out << "s1,1,0.0,1.0\n";
        out << "s1,1,0.5,not_a_number\n";
    }
    try {
        read_curves_csv(file.path);
        FAIL("expected a parse error");
    } catch (const InvalidInputError& e) {
        CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }

    {
        std::ofstream out(file.path);
        out << "id,coord,t,v\n";
    }
    CHECK_THROWS_AS(read_curves_csv(file.path), InvalidInputError);

    // mismatched grids across samples
    {
        std::ofstream out(file.path);
        out << "sample_id,coordinate,time,value\n";
        out << "s1,1,0.0,1.0\n";
        out << "s1,1,1.0,2.0\n";
        out << "s2,1,0.0,1.0\n";
        out << "s2,1,0.7,2.0\n";
    }
    CHECK_THROWS_AS(read_curves_csv(file.path), InvalidInputError);
}

TEST_CASE("labels csv round trip") {
    const DiscreteCurves curves = small_curves();
    TempFile file("labels.csv");
    write_labels_csv(curves, file.path);
    const auto rows = read_labels_csv(file.path);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].first == "s1");
    CHECK_FALSE(rows[0].second);
    CHECK(rows[1].second);
    CHECK(rows[3].second);
}

TEST_CASE("fit json round trip") {
    Rng rng(7);
    FitDocument doc;
    doc.fit.mean.resize(3, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) doc.fit.mean(i, j) = rng.normal();
    Matrix g(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = rng.normal();
    doc.fit.sigma_col = symmetrized(Matrix(g * g.transpose() + Matrix::Identity(3, 3)));
    doc.fit.sigma_row = Matrix::Identity(2, 2);
    doc.fit.h_subset = std::vector<int>{0, 2, 3};
    doc.fit.distances = std::vector<double>{0.5, 1.25, 3.75};
    doc.sample_ids = {"a", "b", "c"};
    doc.flags = {false, false, true};
    doc.cutoff = 3.1;
    doc.config_echo = Json{{"mode", "smoothed"}, {"m", 3}, {"degree", 2},
                           {"domain", {0.0, 1.0}}};

    TempFile file("fit.json");
    write_fit_json(doc, file.path);
    const FitDocument back = read_fit_json(file.path);

    CHECK(back.fit.mean == doc.fit.mean);
    CHECK(back.fit.sigma_row == doc.fit.sigma_row);
    CHECK(back.fit.sigma_col == doc.fit.sigma_col);
    REQUIRE(back.fit.h_subset.has_value());
    CHECK(*back.fit.h_subset == *doc.fit.h_subset);
    REQUIRE(back.fit.distances.has_value());
    CHECK(*back.fit.distances == *doc.fit.distances);
    CHECK(back.sample_ids == doc.sample_ids);
    CHECK(back.flags == doc.flags);
    CHECK(back.cutoff == doc.cutoff);
    CHECK(back.mode() == "smoothed");
    const BasisSystem basis = back.basis();
    CHECK(basis.size == 3);
    CHECK(basis.degree == 2);
}

TEST_CASE("truth json round trip") {
    TruthDocument truth;
    truth.sigma_row = Matrix::Identity(3, 3);
    truth.sigma_row(0, 1) = truth.sigma_row(1, 0) = 0.25;
    truth.kernel = KernelSpec::matern(1.0, 5.0, 0.5);
    truth.mean_name = "linear";

    TempFile file("truth.json");
    write_truth_json(truth, file.path);
    const TruthDocument back = read_truth_json(file.path);
    CHECK(back.sigma_row == truth.sigma_row);
    CHECK(back.kernel.kind == KernelSpec::Kind::matern);
    CHECK(back.kernel.matern_tau == 5.0);
    CHECK(back.mean_name == "linear");
    CHECK(mean_by_name(back.mean_name, 0.5) == doctest::Approx(2.0));
}
