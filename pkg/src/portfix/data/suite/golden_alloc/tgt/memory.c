#include "findfile.h"

void *xmalloc(size_t size)
{
  void *ret = malloc(size);

  if (ret == NULL) {
    abort();
  }
  return ret;
}

char *xstrdup(const char *str)
{
  size_t len = strlen(str) + 1;

  return memcpy(xmalloc(len), str, len);
}

void xfree(void *ptr)
{
  free(ptr);
}
