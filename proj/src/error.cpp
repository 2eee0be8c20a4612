#include "corrnet/error.hpp"

namespace corrnet {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::malformed_input: return "MalformedInput";
    case errc::non_positive_price: return "NonPositivePrice";
    case errc::duplicate_date: return "DuplicateDate";
    case errc::empty_series: return "EmptySeries";
    case errc::series_too_short: return "SeriesTooShort";
    case errc::unknown_symbol: return "UnknownSymbol";
    case errc::duplicate_symbol: return "DuplicateSymbol";
    case errc::kind_mismatch: return "KindMismatch";
    case errc::empty_panel: return "EmptyPanel";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::too_few_samples: return "TooFewSamples";
    case errc::zero_variance: return "ZeroVariance";
    case errc::insufficient_overlap: return "InsufficientOverlap";
    case errc::out_of_range: return "OutOfRange";
    case errc::too_few_points: return "TooFewPoints";
    case errc::degenerate_neighborhood: return "DegenerateNeighborhood";
    case errc::all_undefined: return "AllUndefined";
    case errc::matrix_too_small: return "MatrixTooSmall";
    case errc::symbol_set_mismatch: return "SymbolSetMismatch";
    case errc::singular_design: return "SingularDesign";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

}  // namespace corrnet
