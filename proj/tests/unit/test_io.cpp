#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "relph/errors.hpp"
#include "relph/io.hpp"

using namespace relph;

TEST_CASE("format_double emits shortest round-trip decimals") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5) == "-2.5");
    const double third = 1.0 / 3.0;
    CHECK(std::stod(format_double(third)) == third);
}

TEST_CASE("point-cloud CSV round trip is exact") {
    auto cloud = make_cloud({{0.1, 0.25}, {1.0 / 3.0, 2.0}, {5, 5}},
                            {Species::V, Species::T, Species::M1},
                            {std::numeric_limits<double>::quiet_NaN(),
                             std::numeric_limits<double>::quiet_NaN(), 0.125});
    const auto text = cloud_to_csv(cloud);
    CHECK(text.rfind("x,y,label,omega\n", 0) == 0);
    const auto back = cloud_from_csv(text);
    REQUIRE(back.size() == cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        CHECK(back.points[i] == cloud.points[i]);
        CHECK(back.labels[i] == cloud.labels[i]);
    }
    CHECK(back.omega[2] == 0.125);
    CHECK(std::isnan(back.omega[0]));

    CHECK_THROWS_AS(cloud_from_csv("a,b\n"), IoError);
    CHECK_THROWS_AS(cloud_from_csv("x,y,label,omega\n1,2\n"), IoError);
    CHECK_THROWS_AS(cloud_from_csv("x,y,label,omega\n1,2,Q,\n"), InvalidInputError);
    CHECK_THROWS_AS(cloud_from_csv("x,y,label,omega\n1,zz,T,\n"), IoError);
}

TEST_CASE("diagram JSON round trip keeps infinities") {
    PersistenceDiagram pd;
    pd.dim = 1;
    pd.pairs = {{0.5, 2.5}, {1.0, kInfValue}};
    const auto text = diagram_to_json(pd);
    const auto back = diagram_from_json(text);
    CHECK(back.dim == 1);
    REQUIRE(back.pairs.size() == 2);
    CHECK(back.pairs[0] == std::pair<double, double>{0.5, 2.5});
    CHECK(std::isinf(back.pairs[1].second));

    CHECK_THROWS_AS(diagram_from_json("{"), IoError);
    CHECK_THROWS_AS(diagram_from_json("{\"dim\":0}"), IoError);
}

TEST_CASE("filtered complex JSON lists simplices in filtration order") {
    FilteredComplex fc;
    fc.simplices = {{Simplex::vertex(0), 0.0},
                    {Simplex::vertex(1), 0.0},
                    {Simplex::edge(0, 1), 1.5}};
    const auto text = complex_to_json(fc);
    CHECK(text.find("\"vertices\": [") != std::string::npos);
    CHECK(text.find("1.5") != std::string::npos);
}

TEST_CASE("feature CSV round trip with and without labels") {
    Matrix X = Matrix::zeros(2, 3);
    X.at(0, 0) = 0.5;
    X.at(1, 2) = -1.25;
    const std::vector<std::string> ids{"cloud_a", "cloud_b"};
    const std::vector<std::string> names{"f1", "f2", "f3"};

    const auto plain = features_to_csv(ids, names, X);
    const auto t1 = feature_table_from_csv(plain);
    CHECK(t1.ids == ids);
    CHECK(t1.names == names);
    CHECK(t1.labels.empty());
    CHECK(t1.X.v == X.v);

    const std::vector<int> labels{0, 1};
    const auto labeled = features_to_csv(ids, names, X, &labels);
    const auto t2 = feature_table_from_csv(labeled);
    CHECK(t2.labels == labels);
    CHECK(t2.X.cols == 3);

    CHECK_THROWS_AS(feature_table_from_csv("nope\n1\n"), IoError);
}

TEST_CASE("atomic_write replaces the target file") {
    const auto dir = std::filesystem::temp_directory_path() / "relph_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.txt";
    atomic_write(path, "first\n");
    atomic_write(path, "second\n");
    CHECK(read_file(path) == "second\n");
    std::filesystem::remove_all(dir);
}
