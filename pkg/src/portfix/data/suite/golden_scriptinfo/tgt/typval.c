#include "defs.h"

dictitem_T *tv_dict_find(const dict_T *d, const char *key, ptrdiff_t len)
{
  int i;

  if (d == NULL) {
    return NULL;
  }
  for (i = 0; i < d->dv_count; i++) {
    if (strcmp(d->dv_items[i].di_key, key) == 0) {
      return &d->dv_items[i];
    }
  }
  return NULL;
}

varnumber_T tv_get_number(const typval_T *tv)
{
  bool error = false;

  return tv_get_number_chk(tv, &error);
}

varnumber_T tv_get_number_chk(const typval_T *tv, bool *const ret_error)
{
  if (tv->v_type == VAR_NUMBER) {
    return tv->vval.v_number;
  }
  if (ret_error != NULL) {
    *ret_error = true;
  }
  return 0;
}

const char *tv_get_string(const typval_T *tv)
{
  if (tv->v_type == VAR_STRING) {
    return tv->vval.v_string;
  }
  return "";
}

varnumber_T tv_dict_get_number(const dict_T *d, const char *key)
{
  dictitem_T *di;

  di = tv_dict_find(d, key, -1);
  if (di == NULL) {
    return 0;
  }
  return tv_get_number(&di->di_tv);
}

char *tv_dict_get_string(const dict_T *d, const char *key, bool save)
{
  dictitem_T *di;
  const char *s;

  di = tv_dict_find(d, key, -1);
  if (di == NULL) {
    return NULL;
  }
  s = tv_get_string(&di->di_tv);
  if (save && s != NULL) {
    return strdup(s);
  }
  return (char *)s;
}
