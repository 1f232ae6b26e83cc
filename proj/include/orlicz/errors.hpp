#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

class Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Conjugation: no finite maximizer of xy - M(x) below the overflow cap.
class BracketFailure : public Error {
    using Error::Error;
};

// Simonenko ratio undefined: M(lambda) = 0 at a positive grid point.
class DegenerateRatio : public Error {
    using Error::Error;
};

// Adaptive quadrature could not meet its error budget.
class NonConvergent : public Error {
    using Error::Error;
};

class OutOfDomain : public Error {
    using Error::Error;
};

// No admissible Luxemburg scaling K below the cap.
class NotInSpace : public Error {
    using Error::Error;
};

// (MF) hypotheses fail for the supplied M.
class NotEligible : public Error {
    using Error::Error;
};

class BadParams : public Error {
    using Error::Error;
};

// Hardy fit: gradient modular vanishes while the left side does not.
class DivisionByZero : public Error {
    using Error::Error;
};

class MissingFit : public Error {
    using Error::Error;
};

class NotNFunctions : public Error {
    using Error::Error;
};

class DegenerateCalibration : public Error {
    using Error::Error;
};

class ConfigError : public Error {
    using Error::Error;
};

} // namespace orlicz
