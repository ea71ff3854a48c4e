#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "golomb/cache.hpp"
#include "golomb/constructions.hpp"
#include "golomb/io.hpp"
#include "golomb/version.hpp"

using namespace golomb;

TEST_CASE("ruler json round trip with fixed field order") {
    Ruler r = make_ruler(7, {0, 1, 3});
    json j = ruler_to_json(r);
    CHECK(j.dump() == R"({"v":7,"k":3,"residues":[0,1,3]})");
    CHECK(ruler_from_json(j) == r);

    CHECK_THROWS_AS(ruler_from_json(json::parse(R"({"v":7,"k":4,"residues":[0,1,3]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(ruler_from_json(json::parse(R"({"v":7})")), std::invalid_argument);

    for (i64 q : {3, 5, 9}) {
        Ruler s = singer(q);
        CHECK(ruler_from_json(ruler_to_json(s)) == s);
    }
}

TEST_CASE("ooc json round trip") {
    OocCode c{62, 1, 1, {{0, 1, 3}, {0, 4, 9}}};
    json j = ooc_to_json(c);
    CHECK(j.dump() == R"({"v":62,"lambda_a":1,"lambda_c":1,"blocks":[[0,1,3],[0,4,9]]})");
    CHECK(ooc_from_json(j) == c);
    // lambdas default to 1
    CHECK(ooc_from_json(json::parse(R"({"v":7,"blocks":[[0,1,3]]})")).lambda_a == 1);
}

TEST_CASE("certificate json round trip") {
    Certificate c = certify_mgr(94, 10);
    json j = certificate_to_json(c);
    CHECK(j["verdict"] == "nonexistent");
    CHECK(j["rule"] == "counting2");
    Certificate back = certificate_from_json(j);
    CHECK(back.verdict == c.verdict);
    CHECK(back.rule == c.rule);
    CHECK(back.trace == c.trace);
    CHECK(validate_mgr_certificate(back));
    CHECK(certificate_to_json(back).dump() == j.dump());
}

TEST_CASE("outcome and spectrum round trips") {
    auto o = search(21, 5, {.mode = SearchMode::All});
    json j = outcome_to_json(o);
    SearchOutcome back = outcome_from_json(j);
    CHECK(outcome_to_json(back).dump() == j.dump());

    auto sp = spectrum(5);
    json js = spectrum_to_json(sp);
    Spectrum sback = spectrum_from_json(js);
    CHECK(spectrum_to_json(sback).dump() == js.dump());
}

TEST_CASE("spectrum csv") {
    auto sp = spectrum(5);
    std::string csv = spectrum_to_csv(sp);
    CHECK(csv.find("v,k,status,residues,length\n") == 0);
    CHECK(csv.find("22,5,nonexistent,,") != std::string::npos);
    CHECK(csv.find("lemma-double") != std::string::npos);
    // stable across runs
    CHECK(spectrum_to_csv(spectrum(5)) == csv);
}

TEST_CASE("cache") {
    std::string path = "cache_test.jsonl";
    std::remove(path.c_str());

    CacheKey key{21, 5, "first"};
    CHECK_FALSE(cache_get(path, key, GOLOMB_VERSION));

    json summary = outcome_to_json(search(21, 5, {.mode = SearchMode::First}));
    cache_put(path, CacheRecord{key, GOLOMB_VERSION, "", summary});

    auto hit = cache_get(path, key, GOLOMB_VERSION);
    REQUIRE(hit);
    CHECK(hit->key == key);
    CHECK(hit->summary.dump() == summary.dump());

    // version mismatch misses
    CHECK_FALSE(cache_get(path, key, "0.0.0"));
    // different key misses
    CHECK_FALSE(cache_get(path, CacheKey{22, 5, "first"}, GOLOMB_VERSION));

    // corrupt lines are skipped, later good lines still hit
    {
        std::ofstream app(path, std::ios::app);
        app << "{not json}\n";
    }
    cache_put(path, CacheRecord{CacheKey{22, 5, "prove"}, GOLOMB_VERSION, "",
                                json{{"status", "exhausted"}}});
    CHECK(cache_get(path, key, GOLOMB_VERSION));
    CHECK(cache_get(path, CacheKey{22, 5, "prove"}, GOLOMB_VERSION));

    std::remove(path.c_str());
}
