#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "gmle/json_io.hpp"

using namespace gmle;

TEST_CASE("graph parsing") {
    ordered_json j = ordered_json::parse(R"({
        "vertices": [1, 2, 3, 4],
        "undirected": [[1, 2]],
        "directed": [[1, 3], [2, 4]],
        "bidirected": [[3, 4]]
    })");
    MixedGraph g = graph_from_json(j);
    CHECK(g.order() == 4);
    CHECK(g.undirected().count(UPair(1, 2)) == 1);
    CHECK(g.directed().count(DPair{1, 3}) == 1);
    CHECK(g.bidirected().count(UPair(3, 4)) == 1);
    // missing edge keys mean empty
    MixedGraph h = graph_from_json(ordered_json::parse(R"({"vertices":[1,2]})"));
    CHECK(h.undirected().empty());
    CHECK(h.directed().empty());
    CHECK_THROWS_AS(graph_from_json(ordered_json::parse(R"({"undirected":[[1,2]]})")), input_error);
    CHECK_THROWS_AS(graph_from_json(ordered_json::parse(R"({"vertices":[1],"directed":[[1]]})")),
                    input_error);
}

TEST_CASE("exact matrix parsing") {
    ordered_json j = ordered_json::parse(R"([[".105409", "3/4"], [2, 0.25]])");
    QMatrix m = matrix_from_json(j);
    CHECK(m(0, 0) == make_rational(105409, 1000000));
    CHECK(m(0, 1) == make_rational(3, 4));
    CHECK(m(1, 0) == Rational(2));
    CHECK(m(1, 1) == make_rational(1, 4));
    CHECK_THROWS_AS(matrix_from_json(ordered_json::parse("[]")), input_error);
    CHECK_THROWS_AS(matrix_from_json(ordered_json::parse(R"([[1],[1,2]])")), input_error);
}

TEST_CASE("csv parsing") {
    std::string path = "gmle_test_tmp.csv";
    {
        std::ofstream f(path);
        f << "# comment\n3,5,9,5\n1,6,1,5\n";
    }
    QMatrix m = csv_from_file(path);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 4);
    CHECK(m(0, 0) == Rational(3));
    CHECK(m(1, 3) == Rational(5));
    std::remove(path.c_str());
    CHECK_THROWS_AS(csv_from_file("does_not_exist.csv"), input_error);
}

TEST_CASE("matrices render as decimal or exact strings") {
    DMatrix d(1, 2);
    d(0, 0) = 0.5;
    d(0, 1) = -1.25;
    ordered_json jd = matrix_to_json(d);
    CHECK(jd[0][0].get<std::string>() == "0.5");
    QMatrix q(1, 1, make_rational(3, 4));
    CHECK(matrix_to_json(q)[0][0].get<std::string>() == "3/4");
}

TEST_CASE("result JSON re-parses with finite numeric fields") {
    MixedGraph g({1, 2}, {{1, 2}}, {}, {});
    QMatrix s(2, 2, Rational(0));
    s(0, 0) = Rational(2);
    s(1, 1) = Rational(3);
    s(0, 1) = s(1, 0) = Rational(1);
    MLEResult res = solve_mle(g, s, false);
    ordered_json j = mle_result_to_json(res);
    ordered_json round = ordered_json::parse(j.dump());
    CHECK(round.contains("maxLogLik"));
    double ml = std::stod(round["maxLogLik"].get<std::string>());
    CHECK(std::isfinite(ml));
    CHECK(round["mlDegree"].get<long>() == 1);
    for (const auto& row : round["optima"][0])
        for (const auto& cell : row) CHECK(std::isfinite(std::stod(cell.get<std::string>())));
    CHECK(round["criticalPoints"].size() == res.critical_points.size());
}
