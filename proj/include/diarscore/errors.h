// diarscore/errors.h
//
// Copyright (c)  2026  The diarscore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIARSCORE_ERRORS_H_
#define DIARSCORE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diarscore {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSegment : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

// Two turns of the same speaker overlap inside one annotation. line_no is 0
// when the annotation was not built from a file.
class SameSpeakerOverlap : public Error {
 public:
  SameSpeakerOverlap(std::string recording_id, std::string speaker,
                     std::size_t line_no = 0);

  const std::string &recording_id() const { return recording_id_; }
  const std::string &speaker() const { return speaker_; }
  std::size_t line_no() const { return line_no_; }

 private:
  std::string recording_id_;
  std::string speaker_;
  std::size_t line_no_;
};

class MalformedLine : public Error {
 public:
  MalformedLine(std::size_t line_no, std::string reason);

  std::size_t line_no() const { return line_no_; }
  const std::string &reason() const { return reason_; }

 private:
  std::size_t line_no_;
  std::string reason_;
};

// The reference has no scored speech time, so DER has a zero denominator.
class EmptyReference : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class EmptyReport : public Error {
 public:
  using Error::Error;
};

class ExtentTooLarge : public Error {
 public:
  using Error::Error;
};

class TooManyUtterances : public Error {
 public:
  using Error::Error;
};

}  // namespace diarscore

#endif  // DIARSCORE_ERRORS_H_
