#include "defs.h"

dictitem_T *dict_find(dict_T *d, char_u *key, int len)
{
  int i;

  if (d == NULL) {
    return NULL;
  }
  for (i = 0; i < d->dv_count; i++) {
    if (strcmp((char *)d->dv_items[i].di_key, (char *)key) == 0) {
      return &d->dv_items[i];
    }
  }
  return NULL;
}

varnumber_T tv_get_number(typval_T *varp)
{
  int error = false;

  return tv_get_number_chk(varp, &error);
}

varnumber_T tv_get_number_chk(typval_T *varp, int *denote)
{
  if (varp->v_type == VAR_NUMBER) {
    return varp->vval.v_number;
  }
  if (denote != NULL) {
    *denote = true;
  }
  return 0;
}

char_u *tv_get_string(typval_T *varp)
{
  if (varp->v_type == VAR_STRING) {
    return varp->vval.v_string;
  }
  return (char_u *)"";
}

varnumber_T dict_get_number(dict_T *d, char *key)
{
  dictitem_T *di;

  di = dict_find(d, (char_u *)key, -1);
  if (di == NULL) {
    return 0;
  }
  return tv_get_number(&di->di_tv);
}

char_u *dict_get_string(dict_T *d, char *key, int save)
{
  dictitem_T *di;
  char_u *s;

  di = dict_find(d, (char_u *)key, -1);
  if (di == NULL) {
    return NULL;
  }
  s = tv_get_string(&di->di_tv);
  if (save && s != NULL) {
    s = (char_u *)strdup((char *)s);
  }
  return s;
}
