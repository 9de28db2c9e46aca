#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "chull/oracle.hpp"

namespace chull::cli {

enum ExitCode : int { Ok = 0, VerdictFalse = 1, Usage = 2, Internal = 3 };

/// Runs one command line (without the program name). Everything the command
/// prints goes to out or err; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

using Json = nlohmann::ordered_json;

Json class_json(const XMClass& c);

/// One NDJSON record. The timing goes in "millis" only when requested, so
/// the default payload is reproducible.
Json instance_json(const InstanceOutcome& outcome, bool with_checks, bool with_timing);

Json summary_json(const SweepSummary& summary, const std::string& digest);

/// FNV-1a 64, fed one canonical record line at a time (each followed by '\n').
class Digest {
public:
    void add_line(std::string_view line);
    std::string hex() const;

private:
    std::uint64_t state_ = 0xcbf29ce484222325ull;
};

}  // namespace chull::cli
