#include <catch_amalgamated.hpp>

#include "rmt/catalog.hpp"

using namespace rmt;

TEST_CASE("data/catalog.json matches the built-in catalog", "[catalog]") {
    const auto file = load_catalog(std::string(RMT_DATA_DIR) + "/catalog.json");
    const auto& mem = builtin_catalog();
    REQUIRE(file.size() == mem.size());
    for (std::size_t i = 0; i < mem.size(); ++i) {
        CHECK(file[i].name == mem[i].name);
        CHECK(file[i].family == mem[i].family);
        CHECK(file[i].rank == mem[i].rank);
        CHECK(file[i].multiplicities == mem[i].multiplicities);
    }
    CHECK(mem.size() >= 6);
}

TEST_CASE("catalog loader rejects malformed documents", "[catalog]") {
    const std::string ok = R"({"schema":"rmt-catalog/1","spaces":[{"name":"X","family":"A","rank":1,"multiplicities":{"m":1}}]})";
    CHECK(parse_catalog(ok).size() == 1);
    CHECK_THROWS_AS(parse_catalog(R"({"schema":"rmt-catalog/2","spaces":[]})"), DomainError);
    CHECK_THROWS_AS(parse_catalog(R"({"schema":"rmt-catalog/1","spaces":[],"extra":1})"), DomainError);
    CHECK_THROWS_AS(parse_catalog(
                        R"({"schema":"rmt-catalog/1","spaces":[{"name":"X","family":"A","rank":1,"multiplicities":{"m":1},"colour":"red"}]})"),
                    DomainError);
    CHECK_THROWS_AS(parse_catalog(
                        R"({"schema":"rmt-catalog/1","spaces":[{"name":"X","family":"BC","rank":1,"multiplicities":{"short":3,"long":1}}]})"),
                    ParityError);
    CHECK_THROWS_AS(parse_catalog("{not json"), DomainError);
    CHECK_THROWS_AS(load_catalog("/nonexistent/catalog.json"), DomainError);
}
