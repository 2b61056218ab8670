#ifndef FINDFILE_H
#define FINDFILE_H

#include <stdlib.h>
#include <string.h>

typedef unsigned char char_u;

#define ALLOC_ONE(type) ((type *)malloc(sizeof(type)))

typedef struct ff_stack {
  struct ff_stack *ffs_prev;
  char_u *ffs_fix_path;
  char_u *ffs_wc_path;
  char_u **ffs_filearray;
  int ffs_filearray_size;
  int ffs_filearray_cur;
  int ffs_stage;
  int ffs_level;
  int ffs_star_star_empty;
} ff_stack_T;

typedef struct ff_visited {
  struct ff_visited *ffv_next;
  char_u *ffv_wc_path;
  char_u *ffv_fname;
} ff_visited_T;

char_u *vim_strsave(char_u *string);
void vim_free(void *x);
ff_stack_T *ff_create_stack_element(char_u *fix_part, char_u *wc_part, int level, int star_star_empty);
void ff_free_stack_element(ff_stack_T *stack_ptr);
ff_visited_T *ff_create_visited(char_u *fname, char_u *wc_path);

#endif
