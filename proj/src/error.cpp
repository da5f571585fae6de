#include "hrix/error.hpp"

namespace hrix {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::config_error: return "ConfigError";
    case Errc::file_not_found: return "FileNotFound";
    case Errc::parse_error: return "ParseError";
    case Errc::gap_in_dates: return "GapInDates";
    case Errc::duplicate_date: return "DuplicateDate";
    case Errc::missing_value: return "MissingValue";
    case Errc::too_short: return "TooShort";
    case Errc::not_enough_rows: return "NotEnoughRows";
    case Errc::schema_mismatch: return "SchemaMismatch";
    case Errc::date_misalignment: return "DateMisalignment";
    case Errc::alignment_empty: return "AlignmentEmpty";
    case Errc::segment_too_short: return "SegmentTooShort";
    case Errc::too_many_candidates: return "TooManyCandidates";
    case Errc::infeasible_trim: return "InfeasibleTrim";
    case Errc::tau_out_of_range: return "TauOutOfRange";
    case Errc::non_positive_value: return "NonPositiveValue";
    case Errc::zero_variance: return "ZeroVariance";
    case Errc::zero_denominator: return "ZeroDenominator";
    case Errc::collinear_regressors: return "CollinearRegressors";
    case Errc::rank_deficient: return "RankDeficient";
    case Errc::non_positive_definite: return "NonPositiveDefinite";
    case Errc::optimizer_diverged: return "OptimizerDiverged";
    case Errc::non_stationary_params: return "NonStationaryParams";
    case Errc::convergence_failure: return "ConvergenceFailure";
  }
  return "Error";
}

int errc_exit_code(Errc c) {
  switch (c) {
    case Errc::config_error:
      return 1;
    case Errc::file_not_found:
    case Errc::parse_error:
    case Errc::gap_in_dates:
    case Errc::duplicate_date:
    case Errc::missing_value:
    case Errc::too_short:
    case Errc::not_enough_rows:
    case Errc::schema_mismatch:
    case Errc::date_misalignment:
    case Errc::alignment_empty:
    case Errc::segment_too_short:
    case Errc::too_many_candidates:
    case Errc::infeasible_trim:
    case Errc::tau_out_of_range:
      return 2;
    default:
      return 3;
  }
}

}  // namespace hrix
