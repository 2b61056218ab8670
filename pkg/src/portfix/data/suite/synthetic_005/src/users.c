#include "defs.h"

int apply_buffer(list_T *l, int id, char *name)
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
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  strbuf_T sb3;
  strbuf_init(&sb3);
  strbuf_append(&sb3, (char_u *)"gamma");
  strbuf_append(&sb3, (char_u *)name);
  result += sb3.len;
  free(sb3.data);
  if (p_verbose > 6) {
    semsg(e_list_required, (long)list_len(l));
  }
  return result;
}

int sync_names(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  if (it->key != NULL && STRLEN(it->key) > 7) {
    result++;
  }
  char_u *saved2 = vim_strsave((char_u *)name);
  if (saved2 != NULL) {
    result += (int)saved2[0];
    free(saved2);
  }
  strbuf_T sb3;
  strbuf_init(&sb3);
  strbuf_append(&sb3, (char_u *)"delta");
  strbuf_append(&sb3, (char_u *)name);
  result += sb3.len;
  free(sb3.data);
  if (p_verbose > 6) {
    semsg(e_list_required, (long)list_len(l));
  }
  return result;
}

int update_names(list_T *l, int id, char *name)
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
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
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
  if (list_len(l) >= MAX_ITEMS - 8) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  long *vals2 = ALLOC_MULT(long, MAX_ITEMS);
  vals2[0] = it->value;
  result += (int)vals2[0];
  free(vals2);
  int error3 = false;
  long value3 = item_get_value(it, &error3);
  if (error3) {
    return FAIL;
  }
  result += (int)value3;
  return result;
}

int sync_flags(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  item_T *copy1 = ALLOC_ONE(item_T);
  copy1->id = it->id + 8;
  copy1->value = it->value;
  copy1->key = NULL;
  if (list_append_item(l, copy1) == FAIL) {
    free(copy1);
    return FAIL;
  }
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  return result;
}

int report_flags(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  char_u *saved1 = vim_strsave((char_u *)name);
  if (saved1 != NULL) {
    result += (int)saved1[0];
    free(saved1);
  }
  long *vals2 = ALLOC_MULT(long, MAX_ITEMS);
  vals2[0] = it->value;
  result += (int)vals2[0];
  free(vals2);
  return result;
}

int update_marks(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  item_T *copy1 = ALLOC_ONE(item_T);
  copy1->id = it->id + 7;
  copy1->value = it->value;
  copy1->key = NULL;
  if (list_append_item(l, copy1) == FAIL) {
    free(copy1);
    return FAIL;
  }
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
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
  int found2 = false;
  int flag2 = lookup_flag(name, &found2);
  if (!found2) {
    semsg(e_invalid_argument_nr, (long)flag2);
    return FAIL;
  }
  return result;
}

int reset_values(list_T *l, int id, char *name)
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
  item_T *copy2 = ALLOC_ONE(item_T);
  copy2->id = it->id + 7;
  copy2->value = it->value;
  copy2->key = NULL;
  if (list_append_item(l, copy2) == FAIL) {
    free(copy2);
    return FAIL;
  }
  if (it->key != NULL && STRLEN(it->key) > 1) {
    result++;
  }
  return result;
}

int check_values(list_T *l, int id, char *name)
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
  item_T *copy2 = ALLOC_ONE(item_T);
  copy2->id = it->id + 3;
  copy2->value = it->value;
  copy2->key = NULL;
  if (list_append_item(l, copy2) == FAIL) {
    free(copy2);
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

int apply_marks(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  if (it->key != NULL && STRLEN(it->key) > 6) {
    result++;
  }
  if (list_len(l) >= MAX_ITEMS - 4) {
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

int sync_entry(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  if (list_len(l) >= MAX_ITEMS - 3) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  item_T *copy2 = ALLOC_ONE(item_T);
  copy2->id = it->id + 5;
  copy2->value = it->value;
  copy2->key = NULL;
  if (list_append_item(l, copy2) == FAIL) {
    free(copy2);
    return FAIL;
  }
  int found3 = false;
  int flag3 = lookup_flag(name, &found3);
  if (!found3) {
    semsg(e_invalid_argument_nr, (long)flag3);
    return FAIL;
  }
  return result;
}

int apply_cache(list_T *l, int id, char *name)
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
  item_T *copy2 = ALLOC_ONE(item_T);
  copy2->id = it->id + 0;
  copy2->value = it->value;
  copy2->key = NULL;
  if (list_append_item(l, copy2) == FAIL) {
    free(copy2);
    return FAIL;
  }
  return result;
}
