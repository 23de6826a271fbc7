#include <sstream>

#include "doctest.h"
#include "mdlgbg/csv_loader.hpp"
#include "mdlgbg/errors.hpp"

using namespace mdlgbg;

namespace {

LoadedCsv parse(const std::string& text, const std::string& label = "last") {
    std::istringstream in(text);
    return parse_csv(in, LabelColumn::parse(label));
}

std::string error_of(const std::string& text, const std::string& label = "last") {
    try {
        parse(text, label);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("label column spellings") {
    CHECK(LabelColumn::parse("last").kind == LabelColumn::Kind::Last);
    CHECK(LabelColumn::parse("none").kind == LabelColumn::Kind::None);
    const auto idx = LabelColumn::parse("2");
    CHECK(idx.kind == LabelColumn::Kind::Index);
    CHECK(idx.index == 2);
    const auto name = LabelColumn::parse("species");
    CHECK(name.kind == LabelColumn::Kind::Name);
    CHECK(name.to_string() == "species");
}

TEST_CASE("numeric file with the label last") {
    const auto csv = parse("1.5,a\n2.5,b\n3.5,a\n");
    CHECK(csv.dataset.n() == 3);
    CHECK(csv.dataset.d() == 1);
    CHECK(csv.header.empty());
    CHECK(*csv.dataset.labels == std::vector<int>{0, 1, 0});
    CHECK(csv.class_names == std::vector<std::string>{"a", "b"});
    CHECK(csv.dataset.values(2, 0) == 3.5);
}

TEST_CASE("header row is detected and skipped") {
    const auto csv = parse("x,y,class\n1,2,0\n3,4,1\n");
    CHECK(csv.dataset.n() == 2);
    CHECK(csv.dataset.d() == 2);
    CHECK(csv.header == std::vector<std::string>{"x", "y", "class"});
}

TEST_CASE("label by name and by index") {
    auto csv = parse("kind,x,y\ncat,1,2\ndog,3,4\n", "kind");
    CHECK(csv.dataset.d() == 2);
    CHECK(*csv.dataset.labels == std::vector<int>{0, 1});
    CHECK(csv.dataset.values(1, 1) == 4.0);
    csv = parse("7,1,2\n8,3,4\n", "0");
    CHECK(*csv.dataset.labels == std::vector<int>{0, 1});
    CHECK(csv.dataset.values(0, 0) == 1.0);
    csv = parse("1,2\n3,4\n", "none");
    CHECK_FALSE(csv.dataset.labels);
    CHECK(csv.dataset.d() == 2);
}

TEST_CASE("quoted fields, CRLF and BOM") {
    const auto recs = [] {
        std::istringstream in("\"a,b\",\"he said \"\"hi\"\"\"\r\nc,\"multi\nline\"\r\n");
        return read_csv_records(in);
    }();
    REQUIRE(recs.size() == 2);
    CHECK(recs[0][0] == "a,b");
    CHECK(recs[0][1] == "he said \"hi\"");
    CHECK(recs[1][1] == "multi\nline");
    const auto csv = parse("\xEF\xBB\xBFx,label\r\n1,\"p\"\r\n2,q\r\n");
    CHECK(csv.header[0] == "x");
    CHECK(csv.dataset.n() == 2);
}

TEST_CASE("parse errors name the row and column") {
    const auto bad = error_of("1,2,0\n3,abc,1\n");
    CHECK(bad.find("row 2") != std::string::npos);
    CHECK(bad.find("column 2") != std::string::npos);
    CHECK(bad.find("abc") != std::string::npos);
    const auto ragged = error_of("1,2,0\n3,1\n");
    CHECK(ragged.find("row 2") != std::string::npos);
    const auto missing = error_of("x,y\n1,2\n", "species");
    CHECK_FALSE(missing.empty());
    CHECK_FALSE(error_of("1,2\n3,4\n", "5").empty());
    CHECK_FALSE(error_of("").empty());
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", LabelColumn{}), ParseError);
}

TEST_CASE("bundled datasets load") {
    const auto iris = load_csv(std::string(MDLGBG_TEST_DATA_DIR) + "/iris.csv", LabelColumn{});
    CHECK(iris.dataset.n() == 150);
    CHECK(iris.dataset.d() == 4);
    const auto wine = load_csv(std::string(MDLGBG_TEST_DATA_DIR) + "/wine.csv", LabelColumn{});
    CHECK(wine.dataset.n() == 178);
    CHECK(wine.dataset.d() == 13);
}
