#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "noetherlab/oracle.hpp"
#include "test_util.hpp"

using namespace noetherlab;

namespace {

ModelConfig cfgOf(std::optional<Rational> g, EntropyMode m) {
    ModelConfig c;
    c.gamma = g;
    c.entropy = m;
    return c;
}

std::vector<std::string> tagsOf(const CatalogEntry& e) { return e.relationTags(); }

}  // namespace

TEST_CASE("canonical zero passes with residual exactly zero") {
    ModelConfig cfg;
    Reducer red(RelationSet{});
    Expr z = parse("phi1_t - phi1_t");
    RandomCheckResult r = randomPointCheck(z, red, cfg, 10, kDefaultTol, 7);
    CHECK(r.pass);
    CHECK(r.worstResidual == 0.0);
}

TEST_CASE("determinant identity passes at one hundred points") {
    ModelConfig cfg;
    Reducer red(RelationSet{});
    Expr e = parse("J - (phi1_xi*phi2_eta - phi1_eta*phi2_xi)");
    RandomCheckResult r = randomPointCheck(e, red, cfg, 100, kDefaultTol, 11);
    CHECK(r.pass);
}

TEST_CASE("on-shell divergences pass numerically across the catalog") {
    const Catalog& cat = Catalog::bundled();
    for (auto cfg : {cfgOf(std::nullopt, EntropyMode::Isentropic),
                     cfgOf(std::nullopt, EntropyMode::General)}) {
        for (const CatalogEntry* e : cat.conservedVectors(cfg)) {
            CAPTURE(e->id);
            RandomCheckResult r =
                randomPointCheckVector(e->vector(cfg), cfg, tagsOf(*e), 100, kDefaultTol, 13);
            INFO(r.failure);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("Eulerian divergences pass numerically") {
    const Catalog& cat = Catalog::bundled();
    ModelConfig cfg = cfgOf(std::nullopt, EntropyMode::General);
    for (const char* id : {"mass", "eT1", "eT6", "eT8", "eTF"}) {
        const CatalogEntry& e = cat.at(id);
        RandomCheckResult r =
            randomPointCheckVector(e.vector(cfg), cfg, tagsOf(e), 100, kDefaultTol, 17);
        CAPTURE(id);
        INFO(r.failure);
        CHECK(r.pass);
    }
}

TEST_CASE("negative control: projective vector off gamma = 2 fails numerically") {
    const Catalog& cat = Catalog::bundled();
    ModelConfig cfg = cfgOf(Rational(5, 2), EntropyMode::Isentropic);
    RandomCheckResult r =
        randomPointCheckVector(cat.at("T7").vector(cfg), cfg, {}, 100, kDefaultTol, 19);
    CHECK_FALSE(r.pass);
    ModelConfig g53 = cfgOf(Rational(5, 3), EntropyMode::Isentropic);
    RandomCheckResult r2 =
        randomPointCheckVector(cat.at("T7").vector(g53), g53, {}, 100, kDefaultTol, 19);
    CHECK_FALSE(r2.pass);
}

TEST_CASE("negative control: perturbed momentum fails numerically") {
    const Catalog& cat = Catalog::bundled();
    ModelConfig cfg = cfgOf(std::nullopt, EntropyMode::General);
    ConservedVector T = cat.at("T1").vector(cfg);
    T.comp[0] += parse("phi1_xi");
    RandomCheckResult r = randomPointCheckVector(T, cfg, {}, 100, kDefaultTol, 23);
    CHECK_FALSE(r.pass);
}

TEST_CASE("determinism: fixed seed reproduces identical results") {
    const Catalog& cat = Catalog::bundled();
    ModelConfig cfg = cfgOf(std::nullopt, EntropyMode::General);
    ConservedVector T = cat.at("T6").vector(cfg);
    RandomCheckResult a = randomPointCheckVector(T, cfg, {}, 50, kDefaultTol, 101);
    RandomCheckResult b = randomPointCheckVector(T, cfg, {}, 50, kDefaultTol, 101);
    CHECK(a.worstResidual == b.worstResidual);
    CHECK(a.pass == b.pass);
}

TEST_CASE("manufactured certificates") {
    ModelConfig iso = cfgOf(std::nullopt, EntropyMode::Isentropic);
    CHECK(certifySolution(ManufacturedSolution::uniformFlow(), iso).valid);
    CHECK(certifySolution(ManufacturedSolution::dilation(), iso).valid);
    CHECK_FALSE(certifySolution(ManufacturedSolution::nonSolution(), iso).valid);

    ModelConfig gen = cfgOf(std::nullopt, EntropyMode::General);
    CHECK(certifySolution(ManufacturedSolution::stratifiedRest(), gen).valid);
}

TEST_CASE("uniform flow: divergences vanish to machine precision") {
    const Catalog& cat = Catalog::bundled();
    ModelConfig cfg = cfgOf(Rational(7, 5), EntropyMode::Isentropic);
    GridSpec grid;
    grid.resolutions = {9, 17, 33};
    ManufacturedSolution sol = ManufacturedSolution::uniformFlow();
    for (const CatalogEntry* e : cat.conservedVectors(cfg)) {
        CAPTURE(e->id);
        ManufacturedReport rep = manufacturedCheck(e->vector(cfg), sol, grid, cfg);
        INFO(rep.detail);
        CHECK(rep.machineZero);
    }
}

TEST_CASE("dilation flow: divergence converges at the stencil order") {
    const Catalog& cat = Catalog::bundled();
    ModelConfig cfg = cfgOf(Rational(7, 5), EntropyMode::Isentropic);
    ManufacturedSolution sol = ManufacturedSolution::dilation();
    GridSpec grid;
    ManufacturedReport rep = manufacturedCheck(cat.at("T6").vector(cfg), sol, grid, cfg);
    INFO(rep.detail);
    CHECK(rep.pass);
    if (!rep.machineZero) {
        CHECK(rep.observedOrder >= 1.8);
        CHECK(std::fabs(rep.observedOrder - 2.0) <= 0.2);
    }
    // fourth-order stencil sharpens the observed order accordingly
    GridSpec g4;
    g4.stencilOrder = 4;
    ManufacturedReport rep4 = manufacturedCheck(cat.at("T6").vector(cfg), sol, g4, cfg);
    INFO(rep4.detail);
    CHECK(rep4.pass);
}

TEST_CASE("stratified rest state: nonisentropic vectors check out on the grid") {
    const Catalog& cat = Catalog::bundled();
    ModelConfig cfg = cfgOf(Rational(5, 3), EntropyMode::General);
    ManufacturedSolution sol = ManufacturedSolution::stratifiedRest();
    GridSpec grid;
    for (const char* id : {"T8", "T9", "TF"}) {
        CAPTURE(id);
        ManufacturedReport rep = manufacturedCheck(cat.at(id).vector(cfg), sol, grid, cfg);
        INFO(rep.detail);
        CHECK(rep.pass);
    }
}

TEST_CASE("grid validation errors") {
    const Catalog& cat = Catalog::bundled();
    ModelConfig cfg = cfgOf(Rational(7, 5), EntropyMode::Isentropic);
    GridSpec bad;
    bad.resolutions = {9, 17};
    CHECK_THROWS_AS(manufacturedCheck(cat.at("T1").vector(cfg),
                                      ManufacturedSolution::uniformFlow(), bad, cfg),
                    NlError);
    GridSpec coarse;
    coarse.resolutions = {2, 3, 4};
    CHECK_THROWS_AS(manufacturedCheck(cat.at("T1").vector(cfg),
                                      ManufacturedSolution::uniformFlow(), coarse, cfg),
                    NlError);
}
