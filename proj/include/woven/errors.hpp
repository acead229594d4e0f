/*
 * Copyright 2026 The Woven Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace woven {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit the operation (non-square, length mismatch).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A precondition on an argument value was violated.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Input exceeds a configured enumeration limit.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// Hermitian input expected.
class SymmetryError : public Error {
public:
    using Error::Error;
};

/// A basis matrix is singular.
class BasisError : public Error {
public:
    using Error::Error;
};

/// Spectrum grids or shelf counts disagree.
class GridMismatchError : public Error {
public:
    using Error::Error;
};

/// Input lies outside the domain an operation is defined on.
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace woven
