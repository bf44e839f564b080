#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "noetherlab/catalog.hpp"

using namespace noetherlab;

namespace {

ModelConfig cfgOf(std::optional<Rational> g, EntropyMode m) {
    ModelConfig c;
    c.gamma = g;
    c.entropy = m;
    return c;
}

std::set<std::string> ids(const std::vector<const CatalogEntry*>& es) {
    std::set<std::string> out;
    for (auto* e : es) out.insert(e->id);
    return out;
}

}  // namespace

TEST_CASE("catalog loads and ids are unique") {
    const Catalog& cat = Catalog::bundled();
    std::set<std::string> seen;
    for (const auto& e : cat.entries()) {
        CAPTURE(e.id);
        CHECK(seen.insert(e.id).second);
    }
    CHECK(cat.find("T1") != nullptr);
    CHECK(cat.find("nosuch") == nullptr);
    CHECK_THROWS_AS(cat.at("T999"), NlError);
}

TEST_CASE("admitted generator sets per configuration") {
    const Catalog& cat = Catalog::bundled();
    auto iso = ids(cat.generators(cfgOf(std::nullopt, EntropyMode::Isentropic)));
    CHECK(iso == std::set<std::string>{"X1", "X2", "X3", "X4", "X5", "X6", "X8", "X9", "Xh"});

    auto iso2 = ids(cat.generators(cfgOf(Rational(2), EntropyMode::Isentropic)));
    CHECK(iso2.count("X7") == 1);
    CHECK(iso2.size() == 10);

    auto gen = ids(cat.generators(cfgOf(std::nullopt, EntropyMode::General)));
    CHECK(gen == std::set<std::string>{"X1", "X2", "X3", "X4", "X5", "X6", "X8n", "X9n",
                                       "X10n", "XF"});
    auto gen2 = ids(cat.generators(cfgOf(Rational(2), EntropyMode::General)));
    CHECK(gen2.count("X7") == 1);
    CHECK(gen2.size() == 11);
}

TEST_CASE("conserved-vector sets per configuration") {
    const Catalog& cat = Catalog::bundled();
    auto gen = ids(cat.conservedVectors(cfgOf(std::nullopt, EntropyMode::General)));
    CHECK(gen == std::set<std::string>{"T1", "T2", "T3", "T4", "T5", "T6", "T8", "T9", "TF"});
    auto iso = ids(cat.conservedVectors(cfgOf(std::nullopt, EntropyMode::Isentropic)));
    CHECK(iso == std::set<std::string>{"T1", "T2", "T3", "T4", "T5", "T6", "T8t", "Th"});
    auto iso2 = ids(cat.conservedVectors(cfgOf(Rational(2), EntropyMode::Isentropic)));
    CHECK(iso2.count("T7") == 1);
}

TEST_CASE("every applicable generator is admitted") {
    const Catalog& cat = Catalog::bundled();
    for (auto cfg : {cfgOf(std::nullopt, EntropyMode::Isentropic),
                     cfgOf(std::nullopt, EntropyMode::General),
                     cfgOf(Rational(2), EntropyMode::Isentropic),
                     cfgOf(Rational(2), EntropyMode::General)}) {
        for (const CatalogEntry* e : cat.generators(cfg)) {
            CAPTURE(cfg.str());
            CAPTURE(e->id);
            AdmittedReport rep = verifyAdmitted(*e, cfg);
            CHECK(rep.admitted);
        }
        // combinations are admitted too
        for (const CatalogEntry* e : cat.noetherSources(cfg)) {
            CAPTURE(e->id);
            CHECK(verifyAdmitted(*e, cfg).admitted);
        }
    }
}

TEST_CASE("equivalence generators pass with S prolonged as dependent") {
    const Catalog& cat = Catalog::bundled();
    for (auto cfg : {cfgOf(std::nullopt, EntropyMode::General),
                     cfgOf(Rational(2), EntropyMode::General)}) {
        for (const CatalogEntry* e : cat.equivalenceGenerators(cfg)) {
            CAPTURE(e->id);
            AdmittedReport rep = verifyAdmitted(*e, cfg);
            CHECK(rep.admitted);
        }
    }
}

TEST_CASE("negative controls: projective generator off gamma = 2; dilation alone") {
    const Catalog& cat = Catalog::bundled();
    ModelConfig cfg = cfgOf(std::nullopt, EntropyMode::Isentropic);
    Generator X7 = cat.at("X7").generator(cfg);
    CHECK_FALSE(verifyAdmittedGenerator(X7, false, cfg).admitted);
    ModelConfig gen = cfgOf(std::nullopt, EntropyMode::General);
    Generator X10 = cat.at("X10").generator(gen);
    CHECK_FALSE(verifyAdmittedGenerator(X10, false, gen).admitted);
}

TEST_CASE("printed variant of the combined nonisentropic generator is rejected") {
    const Catalog& cat = Catalog::bundled();
    ModelConfig cfg = cfgOf(std::nullopt, EntropyMode::General);
    const CatalogEntry& e = cat.at("X9hat");
    CHECK(verifyAdmitted(e, cfg).admitted);
    auto alt = e.altGenerator(cfg);
    REQUIRE(alt.has_value());
    CHECK_FALSE(verifyAdmittedGenerator(*alt, false, cfg).admitted);
}

TEST_CASE("classifying-equation reproduction") {
    const Catalog& cat = Catalog::bundled();
    ClassifyingReport rep = verifyClassifying(cat, cfgOf(std::nullopt, EntropyMode::General));
    INFO(rep.detail);
    CHECK(rep.ok);
    CHECK(rep.multiplierNonzero1);
    CHECK(rep.multiplierNonzero2);
    CHECK(rep.obstructionPresent);
    CHECK(rep.obstructionVanishesAt2);
}

TEST_CASE("printer/parser round trip over every catalog expression") {
    const Catalog& cat = Catalog::bundled();
    for (auto cfg : {cfgOf(std::nullopt, EntropyMode::Isentropic),
                     cfgOf(std::nullopt, EntropyMode::General)}) {
        for (const auto& e : cat.entries()) {
            if (!e.applicable(cfg) && e.entropyTag != "none") continue;
            for (const auto& [key, text] : e.fields) {
                bool exprField = key == "expr" || key.rfind("T_", 0) == 0 ||
                                 key.rfind("xi_", 0) == 0 || key.rfind("eta_", 0) == 0 ||
                                 key == "B_t";
                if (!exprField) continue;
                CAPTURE(e.id);
                CAPTURE(key);
                Expr orig = parse(text, e.frame, cfg.entropy);
                Expr back = parse(orig.str(), e.frame, cfg.entropy);
                CHECK(canonicalEq(orig, back));
            }
        }
    }
}

TEST_CASE("commutator closure of the finite isentropic algebra") {
    const Catalog& cat = Catalog::bundled();
    for (auto cfg : {cfgOf(std::nullopt, EntropyMode::Isentropic),
                     cfgOf(Rational(2), EntropyMode::Isentropic)}) {
        CommutatorReport rep = commutatorClosure(cat, cfg);
        for (const auto& f : rep.failures) {
            INFO(f);
        }
        CHECK(rep.closed);
    }
}
