#pragma once

#include <stdexcept>
#include <string>

namespace phaseid {

// All library errors derive from Error. The kind maps to the CLI exit code
// buckets: Usage -> 2, Data -> 3, Numeric -> 4.
class Error : public std::runtime_error {
public:
    enum class Kind { Usage, Data, Numeric };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error(Kind::Data, m) {}
};

struct TopologyError : Error {
    explicit TopologyError(const std::string& m) : Error(Kind::Data, m) {}
};

struct IoError : Error {
    explicit IoError(const std::string& m) : Error(Kind::Data, m) {}
};

struct SizeError : Error {
    explicit SizeError(const std::string& m) : Error(Kind::Data, m) {}
};

struct MatrixError : Error {
    explicit MatrixError(const std::string& m) : Error(Kind::Data, m) {}
};

struct AlignmentError : Error {
    explicit AlignmentError(const std::string& m) : Error(Kind::Data, m) {}
};

struct MaskError : Error {
    explicit MaskError(const std::string& m) : Error(Kind::Usage, m) {}
};

struct ParameterError : Error {
    explicit ParameterError(const std::string& m) : Error(Kind::Usage, m) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& m) : Error(Kind::Usage, m) {}
};

struct EmptyFeatureError : Error {
    explicit EmptyFeatureError(const std::string& m) : Error(Kind::Usage, m) {}
};

struct DegenerateSeriesError : Error {
    explicit DegenerateSeriesError(const std::string& m) : Error(Kind::Numeric, m) {}
};

struct NumericError : Error {
    explicit NumericError(const std::string& m) : Error(Kind::Numeric, m) {}
};

}  // namespace phaseid
