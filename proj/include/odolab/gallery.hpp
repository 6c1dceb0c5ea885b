#pragma once

#include "odolab/verdicts.hpp"

#include <optional>
#include <string>
#include <vector>

namespace odolab {

/// One registered answer: the hypothesis `theorem` holds (or fails) on this system, with the statement it comes from.
struct Expectation {
    std::string theorem;
    bool holds = true;
    std::string anchor;   // the quoted statement backing the expectation
    std::string formula;  // closed-form asymptotics; empty when none is registered
};

struct GalleryEntry {
    std::string id;
    std::string title;
    json config;                  // config schema: odometer, diagonal-translation or weighted-shift
    std::string backend = "rational";
    int horizon = 200;            // default verdict horizon
    std::vector<Expectation> expectations;
    std::vector<std::string> defaults;  // free choices pinned here, each with the constraint it meets
    std::optional<SolverSpec> solver;
    bool open_question = false;

    MapKind kind() const;
    bool is_shift() const { return kind() == MapKind::weighted_shift; }
    /// verdict parameters with this entry's closed forms registered
    VerdictParams verdict_params() const;
    json to_json() const;
};

const std::vector<GalleryEntry>& gallery();
/// throws SpecError for an unknown id
const GalleryEntry& gallery_entry(const std::string& id);
std::vector<std::string> gallery_ids();

struct GalleryCheck {
    std::string id;
    std::string theorem;
    bool expected = true;
    Status status = Status::inconclusive;
    Status numeric_status = Status::inconclusive;
    bool consistent = true;
    std::string note;
    json to_json() const;
};

struct GalleryVerifyOptions {
    std::optional<int> horizon;   // overrides the per-entry default
    std::uint64_t seed = 20240611;
    std::vector<std::string> only;  // empty: every entry
};

struct GalleryVerifyResult {
    std::vector<GalleryCheck> checks;
    std::vector<std::string> roundtrip_failures;
    json open_questions = json::array();  // criterion values only
    bool pass() const;
    json to_json() const;
};

/// Round-trips every config and checks each verdict against the registered expectation.
GalleryVerifyResult verify_gallery(const GalleryVerifyOptions& opt = {});

}  // namespace odolab
