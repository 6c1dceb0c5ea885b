#include "helpers.hpp"

#include "odolab/errors.hpp"
#include "odolab/gallery.hpp"

#include <doctest.h>

#include <set>

using namespace odolab;

TEST_CASE("gallery ids are unique and resolvable") {
    auto ids = gallery_ids();
    CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
    for (const auto& id : ids) CHECK(gallery_entry(id).id == id);
    CHECK_THROWS_AS(gallery_entry("missing"), SpecError);
}

TEST_CASE("open questions carry no expectations") {
    int open = 0;
    for (const auto& e : gallery()) {
        if (!e.open_question) {
            CHECK_FALSE(e.expectations.empty());
            continue;
        }
        ++open;
        CHECK(e.expectations.empty());
    }
    CHECK(open == 2);
}

TEST_CASE("closed forms become verdict parameters") {
    const auto& e = gallery_entry("ornstein");
    auto p = e.verdict_params();
    CHECK(p.horizon == e.horizon);
    CHECK(p.closed_forms.count("cor:hc") == 1);
    CHECK(p.closed_forms.count("bounded") == 0);
}

TEST_CASE("expectations hold on a selection") {
    GalleryVerifyOptions opt;
    opt.only = {"ornstein", "same-measure-unbounded", "shift-z", "open-binary-3/4"};
    auto r = verify_gallery(opt);
    CHECK(r.roundtrip_failures.empty());
    CHECK(r.pass());
    CHECK(r.open_questions.size() == 1);
    for (const auto& c : r.checks) CHECK_MESSAGE(c.consistent, c.id << " " << c.theorem << " " << c.note);
}
