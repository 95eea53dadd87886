#pragma once

#include <string>
#include <vector>

#include "ztower/iwasawa.hpp"
#include "ztower/tower.hpp"

namespace ztower {

/// Failure inside run_verification, tagged with the stage that raised it.
class StageError : public Error {
  public:
    StageError(std::string stage, const Error &cause)
        : Error(cause.kind(), stage + ": " + cause.what()), stage_(std::move(stage)) {}
    const std::string &stage() const noexcept { return stage_; }

  private:
    std::string stage_;
};

struct PipelineChecks {
    bool connectedness_criterion = false;
    bool levels_connected = false;
    bool cover_axioms = false;            // every X_{n+1} -> X_n and X_n -> X
    bool laplacian_compatibility = false; // L_X ∘ f_r = f_* ∘ L_Y on the same maps
    bool kappa_divisibility = false;      // κ(X_n) | κ(X_{n+1})
    bool immersions = false;              // ι_n : X_n^unr -> X_n
    bool factorization = false;
    bool constant_term_zero = false;
};

struct VerificationReport {
    IwasawaReport iwasawa;
    PipelineChecks checks;
    std::vector<std::string> warnings;

    /// Every property check except the connectedness criterion, which is only
    /// sufficient and is replaced by the direct per-level test when it fails.
    bool properties_ok() const;
    bool passed() const { return properties_ok() && iwasawa.fit.growth_ok; }
};

VerificationReport run_verification(const VoltageGraph &vg, unsigned max_level,
                                    SeriesPrecision precision = {});

} // namespace ztower
