#include <stdarg.h>
#include <stdio.h>
#include "defs.h"

char e_invalid_value_for_argument_str_str[] = "E475: Invalid value for argument %s: %s";
char e_dictionary_required[] = "E715: Dictionary required";

void semsg(const char *fmt, ...)
{
  va_list ap;

  va_start(ap, fmt);
  vfprintf(stderr, fmt, ap);
  va_end(ap);
}

void emsg(const char *msg)
{
  fputs(msg, stderr);
}
