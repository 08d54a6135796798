#pragma once

#include <string>

#include "cosimplex/io.hpp"

#ifndef COSIMPLEX_FIXTURE_DIR
#error "COSIMPLEX_FIXTURE_DIR must point at the fixtures directory"
#endif

inline std::string fixture_path(const std::string& name) { return std::string(COSIMPLEX_FIXTURE_DIR) + "/" + name; }

inline cosimplex::Json load_fixture(const std::string& name) { return cosimplex::read_json_file(fixture_path(name)); }

inline cosimplex::TruncatedSCS load_scs(const std::string& name) { return cosimplex::scs_from_json(load_fixture(name)); }
