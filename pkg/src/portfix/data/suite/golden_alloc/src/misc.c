#include "findfile.h"

char_u *vim_strsave(char_u *string)
{
  size_t len = strlen((char *)string) + 1;
  char_u *p = malloc(len);

  if (p != NULL) {
    memcpy(p, string, len);
  }
  return p;
}

void vim_free(void *x)
{
  if (x != NULL) {
    free(x);
  }
}
