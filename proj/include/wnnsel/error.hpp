#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wnnsel {

// Machine-parsable failure categories. The CLI maps these to exit codes and
// prints them as a single `error: category=<token> ...` line on stderr.
enum class ErrorCode {
    io,
    parse,
    schema,
    degenerate_column,
    empty_table,
    degenerate_margin,
    wrong_shape,
    no_overlap,
    no_candidates,
    column_degenerate,
    method_not_applicable,
    undefined_metric,
    plan_infeasible,
    infeasible_rate,
    invalid_config,
};

inline std::string_view error_code_token(ErrorCode code) {
    switch (code) {
        case ErrorCode::io: return "io";
        case ErrorCode::parse: return "parse";
        case ErrorCode::schema: return "schema";
        case ErrorCode::degenerate_column: return "degenerate_column";
        case ErrorCode::empty_table: return "empty_table";
        case ErrorCode::degenerate_margin: return "degenerate_margin";
        case ErrorCode::wrong_shape: return "wrong_shape";
        case ErrorCode::no_overlap: return "no_overlap";
        case ErrorCode::no_candidates: return "no_candidates";
        case ErrorCode::column_degenerate: return "column_degenerate";
        case ErrorCode::method_not_applicable: return "method_not_applicable";
        case ErrorCode::undefined_metric: return "undefined_metric";
        case ErrorCode::plan_infeasible: return "plan_infeasible";
        case ErrorCode::infeasible_rate: return "infeasible_rate";
        case ErrorCode::invalid_config: return "invalid_config";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace wnnsel
