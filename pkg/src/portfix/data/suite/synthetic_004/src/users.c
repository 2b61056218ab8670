#include "defs.h"

int check_values(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  int error2 = false;
  long value2 = item_get_value(it, &error2);
  if (error2) {
    return FAIL;
  }
  result += (int)value2;
  item_T *copy3 = ALLOC_ONE(item_T);
  copy3->id = it->id + 5;
  copy3->value = it->value;
  copy3->key = NULL;
  if (list_append_item(l, copy3) == FAIL) {
    free(copy3);
    return FAIL;
  }
  int found4 = false;
  int flag4 = lookup_flag(name, &found4);
  if (!found4) {
    semsg(e_invalid_argument_nr, (long)flag4);
    return FAIL;
  }
  return result;
}

int sync_list(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (it->key != NULL && STRLEN(it->key) > 2) {
    result++;
  }
  int error2 = false;
  long value2 = item_get_value(it, &error2);
  if (error2) {
    return FAIL;
  }
  result += (int)value2;
  int found3 = false;
  int flag3 = lookup_flag(name, &found3);
  if (!found3) {
    semsg(e_invalid_argument_nr, (long)flag3);
    return FAIL;
  }
  return result;
}

int merge_list(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (list_len(l) >= MAX_ITEMS - 2) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  if (p_verbose > 4) {
    semsg(e_list_required, (long)list_len(l));
  }
  char_u *saved3 = vim_strsave((char_u *)name);
  if (saved3 != NULL) {
    result += (int)saved3[0];
    free(saved3);
  }
  return result;
}

int reset_buffer(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (it->key != NULL && STRLEN(it->key) > 4) {
    result++;
  }
  char_u *saved2 = vim_strsave((char_u *)name);
  if (saved2 != NULL) {
    result += (int)saved2[0];
    free(saved2);
  }
  int error3 = false;
  long value3 = item_get_value(it, &error3);
  if (error3) {
    return FAIL;
  }
  result += (int)value3;
  return result;
}

int merge_entry(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  if (p_verbose > 8) {
    semsg(e_list_required, (long)list_len(l));
  }
  return result;
}

int apply_keys(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  item_T *copy1 = ALLOC_ONE(item_T);
  copy1->id = it->id + 3;
  copy1->value = it->value;
  copy1->key = NULL;
  if (list_append_item(l, copy1) == FAIL) {
    free(copy1);
    return FAIL;
  }
  strbuf_T sb2;
  strbuf_init(&sb2);
  strbuf_append(&sb2, (char_u *)"kappa");
  strbuf_append(&sb2, (char_u *)name);
  result += sb2.len;
  free(sb2.data);
  return result;
}

int apply_list(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  int error1 = false;
  long value1 = item_get_value(it, &error1);
  if (error1) {
    return FAIL;
  }
  result += (int)value1;
  long *vals2 = ALLOC_MULT(long, MAX_ITEMS);
  vals2[0] = it->value;
  result += (int)vals2[0];
  free(vals2);
  return result;
}

int collect_buffer(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (list_len(l) >= MAX_ITEMS - 8) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  char_u *saved2 = vim_strsave((char_u *)name);
  if (saved2 != NULL) {
    result += (int)saved2[0];
    free(saved2);
  }
  return result;
}

int reset_list(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  int error1 = false;
  long value1 = item_get_value(it, &error1);
  if (error1) {
    return FAIL;
  }
  result += (int)value1;
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  return result;
}

int report_buffer(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  int error1 = false;
  long value1 = item_get_value(it, &error1);
  if (error1) {
    return FAIL;
  }
  result += (int)value1;
  strbuf_T sb2;
  strbuf_init(&sb2);
  strbuf_append(&sb2, (char_u *)"alpha");
  strbuf_append(&sb2, (char_u *)name);
  result += sb2.len;
  free(sb2.data);
  return result;
}

int reset_marks(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  if (p_verbose > 8) {
    semsg(e_list_required, (long)list_len(l));
  }
  long *vals2 = ALLOC_MULT(long, MAX_ITEMS);
  vals2[0] = it->value;
  result += (int)vals2[0];
  free(vals2);
  return result;
}

int merge_buffer(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  if (p_verbose > 1) {
    semsg(e_list_required, (long)list_len(l));
  }
  return result;
}

int sync_range(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (p_verbose > 7) {
    semsg(e_list_required, (long)list_len(l));
  }
  strbuf_T sb2;
  strbuf_init(&sb2);
  strbuf_append(&sb2, (char_u *)"sigma");
  strbuf_append(&sb2, (char_u *)name);
  result += sb2.len;
  free(sb2.data);
  return result;
}
