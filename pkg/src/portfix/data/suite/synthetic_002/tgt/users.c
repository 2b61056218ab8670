#include "defs.h"

int scan_marks(list_T *l, int id, char *name)
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
  int found2 = false;
  int flag2 = lookup_flag(name, &found2);
  if (!found2) {
    semsg(e_invalid_argument_nr, (long)flag2);
    return FAIL;
  }
  if (it->key != NULL && STRLEN(it->key) > 2) {
    result++;
  }
  char_u *saved4 = vim_strsave((char_u *)name);
  if (saved4 != NULL) {
    result += (int)saved4[0];
    free(saved4);
  }
  if (p_verbose > 1) {
    semsg(e_list_required, (long)list_len(l));
  }
  return result;
}

int merge_items(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  int found1 = false;
  int flag1 = lookup_flag(name, &found1);
  if (!found1) {
    semsg(e_invalid_argument_nr, (long)flag1);
    return FAIL;
  }
  long *vals2 = ALLOC_MULT(long, MAX_ITEMS);
  vals2[0] = it->value;
  result += (int)vals2[0];
  free(vals2);
  char_u *saved3 = vim_strsave((char_u *)name);
  if (saved3 != NULL) {
    result += (int)saved3[0];
    free(saved3);
  }
  return result;
}

int check_entry(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  int found1 = false;
  int flag1 = lookup_flag(name, &found1);
  if (!found1) {
    semsg(e_invalid_argument_nr, (long)flag1);
    return FAIL;
  }
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  strbuf_T sb3;
  strbuf_init(&sb3);
  strbuf_append(&sb3, (char_u *)"sigma");
  strbuf_append(&sb3, (char_u *)name);
  result += sb3.len;
  free(sb3.data);
  return result;
}

int store_entry(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (it->key != NULL && STRLEN(it->key) > 0) {
    result++;
  }
  if (list_len(l) >= MAX_ITEMS - 3) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  item_T *copy3 = ALLOC_ONE(item_T);
  copy3->id = it->id + 4;
  copy3->value = it->value;
  copy3->key = NULL;
  if (list_append_item(l, copy3) == FAIL) {
    free(copy3);
    return FAIL;
  }
  return result;
}

int update_items(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (it->key != NULL && STRLEN(it->key) > 7) {
    result++;
  }
  strbuf_T sb2;
  strbuf_init(&sb2);
  strbuf_append(&sb2, (char_u *)"sigma");
  strbuf_append(&sb2, (char_u *)name);
  result += sb2.len;
  free(sb2.data);
  long *vals3 = ALLOC_MULT(long, MAX_ITEMS);
  vals3[0] = it->value;
  result += (int)vals3[0];
  free(vals3);
  return result;
}

int filter_marks(list_T *l, int id, char *name)
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
  int found2 = false;
  int flag2 = lookup_flag(name, &found2);
  if (!found2) {
    semsg(e_invalid_argument_nr, (long)flag2);
    return FAIL;
  }
  return result;
}

int count_flags(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  if (it->key != NULL && STRLEN(it->key) > 4) {
    result++;
  }
  bool error2 = false;
  long value2 = item_get_value(it, &error2);
  if (error2) {
    return FAIL;
  }
  result += (int)value2;
  return result;
}

int merge_flags(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  bool error1 = false;
  long value1 = item_get_value(it, &error1);
  if (error1) {
    return FAIL;
  }
  result += (int)value1;
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  if (list_len(l) >= MAX_ITEMS - 3) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  return result;
}

int sync_flags(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  long *vals1 = ALLOC_MULT(long, MAX_ITEMS);
  vals1[0] = it->value;
  result += (int)vals1[0];
  free(vals1);
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  strbuf_T sb3;
  strbuf_init(&sb3);
  strbuf_append(&sb3, (char_u *)"omega");
  strbuf_append(&sb3, (char_u *)name);
  result += sb3.len;
  free(sb3.data);
  return result;
}

int count_marks(list_T *l, int id, char *name)
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
  strbuf_append(&sb2, (char_u *)"delta");
  strbuf_append(&sb2, (char_u *)name);
  result += sb2.len;
  free(sb2.data);
  return result;
}

int collect_values(list_T *l, int id, char *name)
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
  int found2 = false;
  int flag2 = lookup_flag(name, &found2);
  if (!found2) {
    semsg(e_invalid_argument_nr, (long)flag2);
    return FAIL;
  }
  return result;
}

int count_buffer(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  if (p_verbose > 7) {
    semsg(e_list_required, (long)list_len(l));
  }
  bool error2 = false;
  long value2 = item_get_value(it, &error2);
  if (error2) {
    return FAIL;
  }
  result += (int)value2;
  return result;
}

int apply_marks(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  strbuf_T sb1;
  strbuf_init(&sb1);
  strbuf_append(&sb1, (char_u *)"kappa");
  strbuf_append(&sb1, (char_u *)name);
  result += sb1.len;
  free(sb1.data);
  return result;
}
