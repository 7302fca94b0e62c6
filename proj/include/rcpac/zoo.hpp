#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rcpac/machine.hpp"

namespace rcpac {

// Fixture machines with halting behavior known by construction. Halting
// entries are verified exactly on load (deterministic replay); looping
// entries carry a static divergence certificate. All zoo programs ignore
// their input, so one declared behavior covers every run convention
// (input 0, self-input, anything else).

struct HaltBehavior {
    std::uint64_t steps;
    Nat output;
};

struct ZooEntry {
    std::string name;
    std::uint64_t index;  // encode(program); fixtures keep these small
    Program program;
    std::optional<HaltBehavior> halts;  // nullopt: certified diverger
    bool halting() const { return halts.has_value(); }
};

// Ground-truth injection point for the constructions' exact evaluators:
// maps a machine index to its halting step, nullopt when it loops.
// Implementations may throw on indices they know nothing about.
using HaltingOracle = std::function<std::optional<std::uint64_t>(std::uint64_t)>;

class Zoo {
public:
    static Zoo builtin();
    static Zoo load_text(const std::string& content);
    static Zoo load_file(const std::string& path);
    static const std::string& builtin_text();

    std::string to_file_text() const;

    const std::vector<ZooEntry>& entries() const { return entries_; }
    std::vector<std::uint64_t> halting_indices() const;
    std::vector<std::uint64_t> looping_indices() const;
    const ZooEntry* find(std::uint64_t index) const;

    // Throws std::out_of_range for non-zoo indices: experiments never rest
    // on budget-approximated truth silently.
    HaltingOracle oracle() const;

private:
    std::vector<ZooEntry> entries_;
    std::map<std::uint64_t, std::size_t> by_index_;
};

// Static divergence certificate: the expression provably never reduces to a
// value (an unconditional loop, or a division by a constant zero, reached
// unconditionally). Sound, not complete.
bool certainly_diverges(const ExprPtr& e);
bool uses_input(const ExprPtr& e);

}  // namespace rcpac
