#ifndef MORKIT_ERRORS_HPP
#define MORKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace morkit
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Incompatible or out-of-range dimensions / indices.
class DimensionError : public Error
{
public:
    using Error::Error;
};

/// A block of a descriptor system is missing or inconsistent with the others.
class StructuralError : public Error
{
public:
    using Error::Error;
};

/// Square matrix could not be factored; `column()` is the (original) column
/// at which no acceptable pivot was found.
class SingularMatrixError : public Error
{
public:
    SingularMatrixError(const std::string& what, long column)
        : Error(what), m_column(column)
    {
    }

    long column() const noexcept
    {
        return m_column;
    }

private:
    long m_column;
};

/// K22 is singular, so the descriptor system is not of index one.
class IndexAssumptionError : public Error
{
public:
    using Error::Error;
};

/// The shifted system is singular at an interpolation point.
class ShiftCollisionError : public Error
{
public:
    using Error::Error;
};

/// The leading matrix of a reduced pencil is singular.
class PencilSingularError : public Error
{
public:
    using Error::Error;
};

class IoError : public Error
{
public:
    using Error::Error;
};

/// Malformed Matrix Market or manifest content.
class FormatError : public Error
{
public:
    using Error::Error;
};

} // namespace morkit

#endif // MORKIT_ERRORS_HPP
