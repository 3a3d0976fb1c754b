// Copyright 2026 The ltapod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LTAPOD__ERRORS_HPP_
#define LTAPOD__ERRORS_HPP_

#include <stdexcept>

namespace ltapod
{

class InvalidInput : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

class OutOfRange : public std::out_of_range
{
public:
  using std::out_of_range::out_of_range;
};

/// Host record does not cover a radar timestamp.
class SynchronizationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A state that screening should have ruled out was reached.
class ConsistencyError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

class InvalidEvent : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class InsufficientData : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class InfeasibleSpec : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace ltapod

#endif  // LTAPOD__ERRORS_HPP_
