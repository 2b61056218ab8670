#include "defs.h"

int count_range(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  strbuf_T sb1;
  strbuf_init(&sb1);
  strbuf_append(&sb1, (char_u *)"omega");
  strbuf_append(&sb1, (char_u *)name);
  result += sb1.len;
  free(sb1.data);
  long *vals2 = ALLOC_MULT(long, MAX_ITEMS);
  vals2[0] = it->value;
  result += (int)vals2[0];
  free(vals2);
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  int found4 = false;
  int flag4 = lookup_flag(name, &found4);
  if (!found4) {
    semsg(e_invalid_argument_nr, (long)flag4);
    return FAIL;
  }
  if (p_verbose > 7) {
    semsg(e_list_required, (long)list_len(l));
  }
  return result;
}

int sync_list(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  if (list_len(l) >= MAX_ITEMS - 8) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  strbuf_T sb2;
  strbuf_init(&sb2);
  strbuf_append(&sb2, (char_u *)"sigma");
  strbuf_append(&sb2, (char_u *)name);
  result += sb2.len;
  free(sb2.data);
  if (p_verbose > 0) {
    semsg(e_list_required, (long)list_len(l));
  }
  return result;
}

int collect_range(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (list_len(l) >= MAX_ITEMS - 7) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  strbuf_T sb2;
  strbuf_init(&sb2);
  strbuf_append(&sb2, (char_u *)"sigma");
  strbuf_append(&sb2, (char_u *)name);
  result += sb2.len;
  free(sb2.data);
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  return result;
}

int apply_keys(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  long *vals1 = ALLOC_MULT(long, MAX_ITEMS);
  vals1[0] = it->value;
  result += (int)vals1[0];
  free(vals1);
  strbuf_T sb2;
  strbuf_init(&sb2);
  strbuf_append(&sb2, (char_u *)"gamma");
  strbuf_append(&sb2, (char_u *)name);
  result += sb2.len;
  free(sb2.data);
  return result;
}

int count_flags(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  char_u *saved1 = vim_strsave((char_u *)name);
  if (saved1 != NULL) {
    result += (int)saved1[0];
    free(saved1);
  }
  strbuf_T sb2;
  strbuf_init(&sb2);
  strbuf_append(&sb2, (char_u *)"delta");
  strbuf_append(&sb2, (char_u *)name);
  result += sb2.len;
  free(sb2.data);
  item_T *copy3 = ALLOC_ONE(item_T);
  copy3->id = it->id + 8;
  copy3->value = it->value;
  copy3->key = NULL;
  if (list_append_item(l, copy3) == FAIL) {
    free(copy3);
    return FAIL;
  }
  return result;
}

int check_flags(list_T *l, int id, char *name)
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
  if (list_len(l) >= MAX_ITEMS - 8) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  return result;
}

int count_names(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  strbuf_T sb1;
  strbuf_init(&sb1);
  strbuf_append(&sb1, (char_u *)"alpha");
  strbuf_append(&sb1, (char_u *)name);
  result += sb1.len;
  free(sb1.data);
  int found2 = false;
  int flag2 = lookup_flag(name, &found2);
  if (!found2) {
    semsg(e_invalid_argument_nr, (long)flag2);
    return FAIL;
  }
  return result;
}

int reset_tags(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  strbuf_T sb1;
  strbuf_init(&sb1);
  strbuf_append(&sb1, (char_u *)"delta");
  strbuf_append(&sb1, (char_u *)name);
  result += sb1.len;
  free(sb1.data);
  if (it->key != NULL && STRLEN(it->key) > 9) {
    result++;
  }
  char_u *saved3 = vim_strsave((char_u *)name);
  if (saved3 != NULL) {
    result += (int)saved3[0];
    free(saved3);
  }
  return result;
}

int reset_cache(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  strbuf_T sb1;
  strbuf_init(&sb1);
  strbuf_append(&sb1, (char_u *)"beta");
  strbuf_append(&sb1, (char_u *)name);
  result += sb1.len;
  free(sb1.data);
  long *vals2 = ALLOC_MULT(long, MAX_ITEMS);
  vals2[0] = it->value;
  result += (int)vals2[0];
  free(vals2);
  return result;
}

int count_cache(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  long *vals1 = ALLOC_MULT(long, MAX_ITEMS);
  vals1[0] = it->value;
  result += (int)vals1[0];
  free(vals1);
  if (list_len(l) >= MAX_ITEMS - 8) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  int error3 = false;
  long value3 = item_get_value(it, &error3);
  if (error3) {
    return FAIL;
  }
  result += (int)value3;
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
  if (list_len(l) >= MAX_ITEMS - 7) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  if (it->key != NULL && STRLEN(it->key) > 1) {
    result++;
  }
  return result;
}

int apply_buffer(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (it->key != NULL && STRLEN(it->key) > 9) {
    result++;
  }
  item_T *copy2 = ALLOC_ONE(item_T);
  copy2->id = it->id + 4;
  copy2->value = it->value;
  copy2->key = NULL;
  if (list_append_item(l, copy2) == FAIL) {
    free(copy2);
    return FAIL;
  }
  char_u *saved3 = vim_strsave((char_u *)name);
  if (saved3 != NULL) {
    result += (int)saved3[0];
    free(saved3);
  }
  return result;
}

int apply_values(list_T *l, int id, char *name)
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
  if (p_verbose > 3) {
    semsg(e_list_required, (long)list_len(l));
  }
  return result;
}
