#pragma once

#include <stdexcept>
#include <string>

namespace glsbi {

enum class Errc {
    parameter,
    config,
    io,
    seeding,
    nan_input,
    insufficient_spikes,
    degenerate_isi,
    degenerate_sample,
    table_point_failure,
    kind_mismatch,
    no_edges,
    singular_covariance,
    format,
};

inline const char* to_string(Errc e) noexcept {
    switch (e) {
    case Errc::parameter: return "ParameterError";
    case Errc::config: return "ConfigError";
    case Errc::io: return "IoError";
    case Errc::seeding: return "SeedingFailure";
    case Errc::nan_input: return "NanInput";
    case Errc::insufficient_spikes: return "InsufficientSpikes";
    case Errc::degenerate_isi: return "DegenerateIsi";
    case Errc::degenerate_sample: return "DegenerateSample";
    case Errc::table_point_failure: return "TablePointFailure";
    case Errc::kind_mismatch: return "KindMismatch";
    case Errc::no_edges: return "NoEdges";
    case Errc::singular_covariance: return "SingularCovariance";
    case Errc::format: return "FormatError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Process exit code for an error: 2 config/parameter, 3 numeric, 4 I/O.
inline int exit_code(Errc e) noexcept {
    switch (e) {
    case Errc::parameter:
    case Errc::config:
    case Errc::kind_mismatch: return 2;
    case Errc::io:
    case Errc::format: return 4;
    default: return 3;
    }
}

} // namespace glsbi
