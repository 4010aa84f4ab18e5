#pragma once

#include <stdexcept>
#include <string>

namespace treeblend {

// Base class for data-level failures (malformed files, invalid trees,
// misaligned corpora, undecodable graphs). The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A file could not be read or does not follow the CoNLL-U format.
class ParseError : public Error {
public:
    using Error::Error;
};

// A sentence violates a structural requirement (e.g. is not a tree).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Two corpora that must line up token-for-token do not.
class AlignmentError : public Error {
public:
    using Error::Error;
};

// A weighted graph admits no spanning arborescence rooted at 0.
class DecodeError : public Error {
public:
    using Error::Error;
};

// A broken internal invariant; indicates a bug, not bad input. Exit code 3.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace treeblend
