// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "hef/clilib.hpp"

int main(int argc, char** argv) { return hef::cli::run_cli(argc, argv); }
