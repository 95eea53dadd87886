#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "ztower/iwasawa.hpp"

namespace ztower::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kValidationFailure = 2,
    kComputationFailure = 3,
    kUncertified = 4,
};

struct Streams {
    std::ostream &out;
    std::ostream &err;
};

int validate(const std::filesystem::path &file, Streams io);

struct TowerOptions {
    unsigned levels = 0;
    std::optional<std::string> emit; // "dot" or "json"
    std::filesystem::path out_dir = ".";
};
int tower(const std::filesystem::path &file, const TowerOptions &opts, Streams io);

int kappa(const std::filesystem::path &file, unsigned level, bool group, Streams io);

int invariants(const std::filesystem::path &file, SeriesPrecision precision, Streams io);

int verify(const std::filesystem::path &file, unsigned max_level, bool strict,
           SeriesPrecision precision, Streams io);

int oracle(const std::filesystem::path &file, unsigned level, Streams io);

} // namespace ztower::cli
