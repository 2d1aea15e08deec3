#pragma once

// Command-line front end: verify, sweep, orbit and classify subcommands.
// Exit codes: 0 every check passed, 1 a check failed, 2 usage error.

#include "hypdef/bending.hpp"
#include "hypdef/figure8.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hypdef {

using Json = nlohmann::ordered_json;

struct Figure8VerifyOptions {
    std::optional<Angle> alpha;  // nullopt: exact checks only
    std::vector<Word> extra_words;
    double tol = 1e-9;
};

/// Full figure-eight report; "passed" is true iff every check passed.
Json figure8_report(const Figure8VerifyOptions& opts);
Json bianchi_report_json(const BianchiReport& r);
Json classification_json(const Classification& c);

/// Default tolerance: HYPDEF_TOL if set and valid, else 1e-9.
double default_tolerance();

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hypdef
