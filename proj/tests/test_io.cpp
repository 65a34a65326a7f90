#include <catch2/catch.hpp>

#include "qprenorm/csv.hpp"

using namespace qpr;

TEST_CASE("config round trip", "[io]") {
    ExperimentConfig cfg;
    cfg.set("command", "spectrum");
    cfg.set("omega", 0.6180339887498949);
    cfg.set("order", 100);
    cfg.set("label", "golden run");
    const ExperimentConfig back = ExperimentConfig::deserialize(cfg.serialize());
    CHECK(back.get("command") == "spectrum");
    CHECK(back.get_double("omega") == 0.6180339887498949); // lossless via %.17g
    CHECK(back.get_int("order") == 100);
    CHECK(back.get("label") == "golden run");
    CHECK(back.serialize() == cfg.serialize());
}

TEST_CASE("compare_reference", "[io]") {
    const std::string ref_text = "# comment\n1,-5.0\n2,-8.0\n3,-16.0\n";
    const CsvTable ref = parse_numeric_csv(ref_text);

    const CompareReport same = compare_reference(ref, ref, 1, 0.0, 0.0);
    CHECK(same.all_pass);
    CHECK(same.worst_abs == 0.0);

    const CsvTable perturbed = parse_numeric_csv("1,-5.0\n2,-8.001\n3,-16.0\n");
    const CompareReport rep = compare_reference(perturbed, ref, 1, 1e-12, 1e-12);
    CHECK_FALSE(rep.all_pass);
    CHECK(rep.worst_abs == Approx(1e-3).epsilon(1e-9));
    const CompareReport loose = compare_reference(perturbed, ref, 1, 0.0, 1e-3);
    CHECK(loose.all_pass);

    const CsvTable missing = parse_numeric_csv("1,-5.0\n");
    CHECK_THROWS_AS(compare_reference(missing, ref, 1, 1e-9, 1e-9), SchemaMismatch);
}

TEST_CASE("checksums are stable", "[io]") {
    CHECK(fnv1a64("") == 14695981039346656037ull);
    CHECK(fnv1a64("a") != fnv1a64("b"));
}
