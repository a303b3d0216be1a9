#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gbv {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes, so keep the hierarchy flat.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class syntax_error : public error {
public:
    syntax_error(std::size_t offset, const std::string& what)
        : error("syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class unknown_identifier : public error {
public:
    unknown_identifier(std::size_t offset, std::string name)
        : error("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
          offset_(offset), name_(std::move(name)) {}
    std::size_t offset() const noexcept { return offset_; }
    const std::string& name() const noexcept { return name_; }

private:
    std::size_t offset_;
    std::string name_;
};

class domain_error : public error {
public:
    using error::error;
};

class monotonicity_violation : public error {
public:
    explicit monotonicity_violation(long long index)
        : error("monotonicity violated at index " + std::to_string(index)), index_(index) {}
    long long index() const noexcept { return index_; }

private:
    long long index_;
};

class nonpositive_value : public error {
public:
    explicit nonpositive_value(long long index)
        : error("nonpositive value at index " + std::to_string(index)), index_(index) {}
    long long index() const noexcept { return index_; }

private:
    long long index_;
};

// delta(n) did not grow by the required factor over the validated horizon.
class unboundedness_evidence : public error {
public:
    using error::error;
};

class resource_limit : public error {
public:
    using error::error;
};

class guard_exceeded : public error {
public:
    using error::error;
};

class out_of_domain : public error {
public:
    using error::error;
};

class horizon_too_small : public error {
public:
    using error::error;
};

class sort_violation : public error {
public:
    using error::error;
};

class negative_input : public error {
public:
    using error::error;
};

class not_found : public error {
public:
    not_found(int level, long long limit)
        : error("no n <= " + std::to_string(limit) + " satisfies the level conditions for level " +
                std::to_string(level)),
          level_(level), limit_(limit) {}
    int level() const noexcept { return level_; }
    long long limit() const noexcept { return limit_; }

private:
    int level_;
    long long limit_;
};

class chain_violation : public error {
public:
    chain_violation(int level, std::string step)
        : error("inequality chain violated at level " + std::to_string(level) + ", step " + step),
          level_(level), step_(std::move(step)) {}
    int level() const noexcept { return level_; }
    const std::string& step() const noexcept { return step_; }

private:
    int level_;
    std::string step_;
};

}  // namespace gbv
