/*
  Copyright 2026 The SolitonScope Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#include <stdio.h>
#include <string.h>

#include "solitonscope/solitonscope.h"

int main(void) {
  ss_session* s = NULL;
  int code = -1;
  if (ss_session_create(&s) != SS_OK) return 10;
  if (ss_session_load_config(s, "gallery:hyperplane") != SS_OK) return 11;
  if (ss_session_set_format(s, "json") != SS_OK) return 12;
  if (ss_session_run(s, "classify", &code) != SS_OK || code != 0) return 13;
  if (strstr(ss_session_report(s), "\"tag\": \"hyperplane\"") == NULL) return 14;
  ss_session_destroy(s);
  printf("c api ok (%s)\n", ss_version());
  return 0;
}
