#pragma once

#include <stdexcept>
#include <string>

namespace yl {

enum class errc {
    not_prime,
    too_large,
    dimension_mismatch,
    improper_ideal,
    not_free,
    not_local,
    not_truncated_ambient,
    not_exponent_one,
    not_local_base,
    not_diff_simple,
    non_split_residue_field,
    constraint_mismatch,
    unsolvable,
    internal_disagreement,
    bad_parameters,
};

const char* errc_name(errc c);

class engine_error : public std::runtime_error {
  public:
    engine_error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw engine_error(code, what);
}

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond)
        fail(code, what);
}

} // namespace yl
