#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rcdfs/dataset_io.hpp"
#include "rcdfs/error.hpp"
#include "rcdfs/random.hpp"
#include "rcdfs/synth.hpp"

using namespace rcdfs;
using namespace rcdfs::io;

namespace {

const std::string kData = RCDFS_TEST_DATA;

}  // namespace

TEST_CASE("small CSV with a named class column") {
    const auto d = parse_csv("a,b,class\n1,x,yes\n2,y,no\n3,x,yes\n");
    REQUIRE(d.features.size() == 2);
    CHECK(d.n_rows() == 3);
    CHECK(d.features[0].kind == ColumnKind::numeric);
    CHECK(d.features[1].kind == ColumnKind::nominal);
    CHECK(d.features[1].categories == std::vector<std::string>{"x", "y"});
    CHECK(d.label.name == "class");
    CHECK(d.label.categories == std::vector<std::string>{"yes", "no"});

    const auto by_index = parse_csv("a,b,class\n1,x,yes\n2,y,no\n", "0");
    CHECK(by_index.label.name == "a");
    CHECK(by_index.label.kind == ColumnKind::nominal);
    CHECK(by_index.label.categories == std::vector<std::string>{"1", "2"});
    CHECK(parse_csv("a,b,class\n1,x,yes\n", "b").label.name == "b");
}

TEST_CASE("mixed numeric and text cells make a nominal column") {
    const auto d = load_csv(kData + "/mixed.csv");
    REQUIRE(d.features.size() == 3);
    const auto& id = d.features[0];
    CHECK(id.kind == ColumnKind::nominal);
    CHECK(id.categories == std::vector<std::string>{"1.5", "2.0", "x"});
    CHECK(d.features[1].kind == ColumnKind::numeric);
    CHECK_FALSE(d.features[1].numbers[2].has_value());
    CHECK(d.features[2].name == "note, quoted");
    CHECK(d.features[2].categories == std::vector<std::string>{"alpha", "say \"hi\""});
    CHECK(d.features[2].is_missing(1));
}

TEST_CASE("CSV errors") {
    CHECK_THROWS_AS(parse_csv(""), InputError);
    CHECK_THROWS_AS(parse_csv("\n\n"), InputError);
    CHECK_THROWS_AS(parse_csv("a,b\n"), InputError);
    CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), InputError);
    CHECK_THROWS_AS(parse_csv("a,b\n1\n"), InputError);
    CHECK_THROWS_AS(parse_csv("a,b\n1,x\n", "c"), InputError);
    CHECK_THROWS_AS(parse_csv("a,b\n1,x\n", "7"), InputError);
    CHECK_THROWS_AS(parse_csv("a,b\n1,x\n2,?\n"), InputError);
    CHECK_THROWS_AS(parse_csv("a,b\n1,\n"), InputError);
    CHECK_THROWS_AS(parse_csv("a\n1\n"), InputError);
    CHECK_THROWS_AS(parse_csv("a,a,c\n1,2,x\n"), InputError);
    CHECK_THROWS_AS(parse_csv("a,b\n\"1,x\n"), InputError);
    CHECK_THROWS_AS(load_csv(kData + "/does-not-exist.csv"), InputError);
}

TEST_CASE("CSV tolerates CRLF, blank lines and surrounding spaces") {
    const auto d = parse_csv("a , b\r\n 1 , x \r\n\r\n2,y\r\n");
    CHECK(d.features[0].name == "a");
    CHECK(d.features[0].numbers[0] == 1.0);
    CHECK(d.label.categories == std::vector<std::string>{"x", "y"});
}

TEST_CASE("non-finite text is nominal") {
    const auto d = parse_csv("a,c\nnan,x\ninf,y\n");
    CHECK(d.features[0].kind == ColumnKind::nominal);
}

TEST_CASE("ARFF declared order, missing values and class") {
    const auto d = load_arff(kData + "/weather.arff");
    REQUIRE(d.features.size() == 4);
    CHECK(d.n_rows() == 14);
    CHECK(d.features[0].categories == std::vector<std::string>{"sunny", "overcast", "rainy"});
    CHECK(d.features[0].codes[3] == Code{2});
    CHECK(d.features[1].kind == ColumnKind::numeric);
    CHECK(d.features[1].is_missing(9));
    CHECK(d.label.name == "play");
    CHECK(d.label.categories == std::vector<std::string>{"yes", "no"});
    CHECK(d.label.codes[0] == Code{1});

    const auto windy = load_arff(kData + "/weather.arff", "windy");
    CHECK(windy.label.name == "windy");
    CHECK(windy.features.back().name == "play");
    CHECK_THROWS_AS(load_arff(kData + "/weather.arff", "temperature"), InputError);
}

TEST_CASE("ARFF value list example and errors") {
    const std::string head = "@relation t\n@attribute colour {red,green,blue}\n@attribute c {a,b}\n@data\n";
    const auto d = parse_arff(head + "blue,a\n?,b\n'red',a\n");
    CHECK(d.features[0].codes[0] == Code{2});
    CHECK_FALSE(d.features[0].codes[1].has_value());
    CHECK(d.features[0].codes[2] == Code{0});

    CHECK_THROWS_WITH_AS(parse_arff(head + "{0 blue, 1 a}\n"), "sparse ARFF format is not supported", InputError);
    CHECK_THROWS_AS(parse_arff(head + "purple,a\n"), InputError);
    CHECK_THROWS_AS(parse_arff(head + "red\n"), InputError);
    CHECK_THROWS_AS(parse_arff(head + "red,?\n"), InputError);
    CHECK_THROWS_AS(parse_arff("@relation t\n@attribute s string\n@attribute c {a}\n@data\nx,a\n"), InputError);
    CHECK_THROWS_AS(parse_arff("@relation t\n@attribute x\n@attribute c {a}\n@data\n1,a\n"), InputError);
    CHECK_THROWS_AS(parse_arff("@relation t\n@attribute x numeric\n@attribute c {a}\n1,a\n"), InputError);
    CHECK_THROWS_AS(parse_arff("@relation t\n@attribute x numeric\n@attribute c {a}\n@data\nq,a\n"), InputError);
    CHECK_THROWS_AS(parse_arff("@relation t\n@attribute x {a,\n@attribute c {a}\n@data\na,a\n"), InputError);
}

TEST_CASE("export and reload reproduce the dataset") {
    const auto mixed = load_csv(kData + "/mixed.csv");
    CHECK(parse_csv(to_csv(mixed)) == mixed);

    const auto weather = load_arff(kData + "/weather.arff");
    const auto via_csv = parse_csv(to_csv(weather));
    CHECK(parse_csv(to_csv(via_csv)) == via_csv);

    Rng rng(81);
    for (int trial = 0; trial < 30; ++trial) {
        std::string text = "n,t,\"odd \"\"name\"\"\",cls\n";
        const std::size_t rows = 1 + uniform_below(rng, 30);
        for (std::size_t r = 0; r < rows; ++r) {
            text += uniform_unit(rng) < 0.1 ? "?" : std::to_string(uniform_unit(rng) * 100.0 - 50.0);
            text += ",";
            const char* words[] = {"a", "b b", "\"c,d\"", "?", "e"};
            text += words[uniform_below(rng, 5)];
            text += ",";
            text += std::to_string(uniform_below(rng, 4));
            text += ",k" + std::to_string(uniform_below(rng, 3)) + "\n";
        }
        const auto d = parse_csv(text);
        CHECK(parse_csv(to_csv(d)) == d);
    }

    const auto path = (std::filesystem::temp_directory_path() / "rcdfs_roundtrip.csv").string();
    write_csv(path, mixed);
    CHECK(load_csv(path) == mixed);
    std::remove(path.c_str());
}

TEST_CASE("prepare codes nominal columns and imputes the mode") {
    const auto d = parse_csv("f,g,c\nx,1,p\ny,1,q\nx,2,p\n?,2,q\n", "");
    const auto p = prepare(d, std::nullopt, PrepareOptions{false});
    CHECK(p.table.n_features() == 2);
    CHECK(p.table.arity(0) == 2);
    CHECK(p.table.column(0)[3] == 0);
    CHECK(p.provenance[0].missing == 1);
    CHECK(p.provenance[0].imputed_code == Code{0});
    CHECK_FALSE(p.provenance[1].imputed_code.has_value());
    CHECK(p.table.arity(1) == 2);
    CHECK(p.model.features.empty());
    CHECK(p.class_names == std::vector<std::string>{"p", "q"});
}

TEST_CASE("prepare discretizes numeric columns and reuses a saved model") {
    const auto d = parse_csv("v,w,c\n1,5,a\n2,5,b\n3,5,a\n10,5,b\n11,5,b\n12,5,a\n");
    const auto d2 = parse_csv("v,w,c\n1,1,a\n2,2,a\n3,3,a\n10,4,b\n11,5,b\n12,6,b\n");
    const auto p = prepare(d2);
    REQUIRE(p.model.features.size() == 2);
    CHECK(p.model.features[0].cuts.size() == 1);
    CHECK(p.table.arity(0) == 2);
    CHECK(p.provenance[0].discretized);
    const auto again = prepare(d2, p.model);
    CHECK(again.model == p.model);
    for (std::size_t f = 0; f < 2; ++f) {
        CHECK(std::equal(again.table.column(f).begin(), again.table.column(f).end(), p.table.column(f).begin()));
    }
    // A column the MDL rule leaves uncut is kept with a single code.
    const auto flat = prepare(d);
    CHECK(flat.table.n_features() == 2);
    CHECK(flat.table.arity(1) == 1);

    mdl::DiscretizationModel partial{{{"v", {5.0}}}};
    CHECK_THROWS_AS(prepare(d2, partial), InputError);
}

TEST_CASE("prepare without discretization ranks distinct values") {
    const auto d = parse_csv("v,c\n3.5,a\n-1,b\n3.5,a\n7,b\n");
    const auto p = prepare(d, std::nullopt, PrepareOptions{false});
    CHECK(p.table.arity(0) == 3);
    CHECK(std::vector<Code>(p.table.column(0).begin(), p.table.column(0).end()) == std::vector<Code>{1, 0, 1, 2});
}

TEST_CASE("prepare rejects empty columns") {
    CHECK_THROWS_AS(prepare(parse_csv("v,c\n?,a\n?,b\n")), InputError);
    CHECK_THROWS_AS(prepare(parse_csv("v,w,c\n1,?,a\n2,,b\n")), InputError);
}

TEST_CASE("all-nominal input bypasses the discretizer") {
    const auto p = prepare(load_csv(kData + "/mixed.csv", "label"), std::nullopt);
    CHECK(p.model.features.size() == 1);  // only the numeric score column
    CHECK(p.provenance[0].kind == ColumnKind::nominal);
    CHECK_FALSE(p.provenance[0].discretized);
}

TEST_CASE("synthetic table export keeps codes") {
    const auto t = synth::duplicate_table();
    const auto raw = to_raw(t);
    const auto reloaded = parse_csv(to_csv(raw));
    const auto p = prepare(reloaded);
    CHECK(p.model.features.empty());
    CHECK(p.table.n_features() == 3);
    CHECK(p.table.feature_names() == t.feature_names());
    for (std::size_t f = 0; f < 3; ++f) {
        CHECK(std::equal(p.table.column(f).begin(), p.table.column(f).end(), t.column(f).begin()));
    }
    CHECK(std::equal(p.table.labels().begin(), p.table.labels().end(), t.labels().begin()));
}

TEST_CASE("format names") {
    CHECK(parse_format("ARFF") == Format::arff);
    CHECK(guess_format("x/y.Arff") == Format::arff);
    CHECK(guess_format("x.csv") == Format::csv);
    CHECK_THROWS_AS(parse_format("xlsx"), InputError);
}
