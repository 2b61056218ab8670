#include <stdarg.h>
#include <stdio.h>
#include "defs.h"

const char e_invargNval[] = "E475: Invalid value for argument %s: %s";
const char e_dictreq[] = "E715: Dictionary required";

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
