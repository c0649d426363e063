#pragma once

#include <stdexcept>
#include <string>

namespace norbrack {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define NORBRACK_DEFINE_ERROR(Name)                   \
    class Name : public Error {                      \
    public:                                          \
        explicit Name(const std::string& what)       \
            : Error(std::string(#Name ": ") + what)  \
        {                                            \
        }                                            \
    }

NORBRACK_DEFINE_ERROR(InvalidArgument);
NORBRACK_DEFINE_ERROR(InvalidGrid);
NORBRACK_DEFINE_ERROR(GridMismatch);
NORBRACK_DEFINE_ERROR(ImmersionDegenerate);
NORBRACK_DEFINE_ERROR(GenerationFailed);
NORBRACK_DEFINE_ERROR(NotPositive);
NORBRACK_DEFINE_ERROR(SupportViolation);
NORBRACK_DEFINE_ERROR(StepTooLarge);
NORBRACK_DEFINE_ERROR(BasisTooLarge);
NORBRACK_DEFINE_ERROR(ConfigInvalid);
NORBRACK_DEFINE_ERROR(IoError);

#undef NORBRACK_DEFINE_ERROR

} // namespace norbrack
