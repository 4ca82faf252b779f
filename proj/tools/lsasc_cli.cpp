// SPDX-License-Identifier: Apache-2.0
//
// lsasc - single-carrier uplink simulation for large-scale antenna arrays
// Copyright (C) 2026 The lsasc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "lsasc/cli.hpp"

#include <iostream>

int main(int argc, char **argv)
{
    return lsasc::cli_main(argc, argv, std::cout, std::cerr);
}
