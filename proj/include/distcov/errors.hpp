#ifndef DISTCOV_ERRORS_HPP
#define DISTCOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace distcov {

/// Problems with user-supplied data (files, matrices, samples). Each carries
/// a stable machine-readable kind so callers can map errors without parsing
/// message text.
class DataError : public std::runtime_error {
  public:
    enum class Kind {
        NonSquare,
        NonFinite,
        Asymmetry,
        NegativeEntry,
        NonzeroDiagonal,
        EmptySample,
        DimensionMismatch,
        MissingFile,
        BadHeader,
        MixedTypes,
        MissingValue,
        SampleSizeMismatch,
        DegenerateSample,
        RankDeficient,
        SeriesTooShort,
    };

    DataError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

    const char* kind_name() const noexcept {
        switch (kind_) {
            case Kind::NonSquare: return "non_square";
            case Kind::NonFinite: return "non_finite";
            case Kind::Asymmetry: return "asymmetry";
            case Kind::NegativeEntry: return "negative_entry";
            case Kind::NonzeroDiagonal: return "nonzero_diagonal";
            case Kind::EmptySample: return "empty_sample";
            case Kind::DimensionMismatch: return "dimension_mismatch";
            case Kind::MissingFile: return "missing_file";
            case Kind::BadHeader: return "bad_header";
            case Kind::MixedTypes: return "mixed_types";
            case Kind::MissingValue: return "missing_value";
            case Kind::SampleSizeMismatch: return "sample_size_mismatch";
            case Kind::DegenerateSample: return "degenerate_sample";
            case Kind::RankDeficient: return "rank_deficient";
            case Kind::SeriesTooShort: return "series_too_short";
        }
        return "unknown";
    }

  private:
    Kind kind_;
};

/// Violation of an internal numerical consistency guarantee (e.g. a squared
/// correlation escaping [0,1] beyond rounding tolerance). Indicates a bug or
/// an input outside the library's mathematical assumptions, not bad user data.
class InternalError : public std::logic_error {
  public:
    explicit InternalError(const std::string& message) : std::logic_error(message) {}
};

} // namespace distcov

#endif
