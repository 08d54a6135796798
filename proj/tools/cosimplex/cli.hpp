#pragma once

#include <CLI11.hpp>

#include <functional>
#include <string>

#include "cosimplex/io.hpp"

namespace cosimplex::cli {

enum class Scalar { Exact, Float };
enum class Format { Json, Text, Dot };

struct Options {
  Scalar scalar = Scalar::Exact;
  double tol = kDefaultTolerance;
  Format format = Format::Json;
};

// Exit codes of the tool.
inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kBadInput = 2;

// A subcommand body: writes its output through emit() and returns the exit code.
using Action = std::function<int()>;

// Registered subcommands set this to their body; main runs it after parsing.
struct Dispatch {
  Action action;
};

void emit(const Options& opt, const Json& j);
void emit_text(const std::string& s);
// JSON as indented "key: value" lines.
std::string json_to_text(const Json& j);

// Exit code for a report-shaped result.
inline int verdict(bool ok) { return ok ? kPass : kFail; }

void add_scs_commands(CLI::App& app, const Options& opt, Dispatch& d);
void add_tower_commands(CLI::App& app, const Options& opt, Dispatch& d);
void add_spread_commands(CLI::App& app, const Options& opt, Dispatch& d);
void add_graph_commands(CLI::App& app, const Options& opt, Dispatch& d);

}  // namespace cosimplex::cli
